#include "hyperlevy/acceptance.hpp"

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>
#include <thread>

int main(int argc, char** argv)
{
    hyperlevy::AcceptanceOptions opt;
    opt.threads = std::max(1u, std::thread::hardware_concurrency());
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) opt.quick = true;
        else opt.only.push_back(std::atoi(argv[i]));
    }
    auto res = hyperlevy::run_acceptance(opt, std::cout);
    int failed = 0;
    for (auto& r : res) failed += !r.pass;
    std::cout << (failed ? "FAIL" : "PASS") << " acceptance: " << res.size() - failed << "/" << res.size()
              << " criteria passed\n";
    return failed ? 1 : 0;
}

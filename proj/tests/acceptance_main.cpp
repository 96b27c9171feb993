// One line per acceptance criterion; exit status 1 when any fails.

#include <cstdlib>
#include <iostream>

#include "stc/acceptance.hpp"

int main(int argc, char** argv) {
    stc::AcceptanceOptions opts;
    for (int i = 1; i < argc; ++i) opts.only.insert(std::atoi(argv[i]));
    bool ok = true;
    for (int id = 1; id <= stc::kCriterionCount; ++id) {
        if (!opts.only.empty() && !opts.only.count(id)) continue;
        const auto r = stc::run_criterion(id, opts.exec);
        std::cout << stc::format_criterion(r) << std::endl;
        ok = ok && r.passed;
    }
    return ok ? 0 : 1;
}

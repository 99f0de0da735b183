// Acceptance suite: runs the full verification battery and prints one
// pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <cstdio>
#include <vector>

#include "qcorr/verify.hpp"

int main()
{
    const std::vector<qcorr::verify::CheckResult> results = qcorr::verify::run_all();

    int failures = 0;
    int index = 0;
    for (const auto& r : results) {
        ++index;
        std::printf("[%s] criterion %d: %s: %s\n", r.pass ? "PASS" : "FAIL", index, r.name.c_str(),
                    r.detail.c_str());
        if (!r.pass) ++failures;
    }
    std::printf("acceptance: %d/%zu criteria passed\n", index - failures, results.size());
    return failures == 0 ? 0 : 1;
}

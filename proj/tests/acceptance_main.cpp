// Acceptance report: one line per criterion, exit 0 only if every
// criterion that ran passed.  An optional argument filters criteria by
// substring of the name, e.g. `acceptance_tests asymptotics`.

#include <cstdio>
#include <string>

#include <sectorflow/verify.hpp>

int main(int argc, char** argv) {
    const std::string filter = argc > 1 ? argv[1] : "";
    const auto results = sectorflow::run_acceptance(filter);
    if (results.empty()) {
        std::fprintf(stderr, "no criterion name contains \"%s\"\n", filter.c_str());
        return 1;
    }
    int passed = 0;
    for (const auto& r : results) {
        std::printf("%s  %2d %-28s %s  [%.2fs]\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        if (r.pass) ++passed;
    }
    std::printf("%d/%d criteria passed\n", passed, static_cast<int>(results.size()));
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}

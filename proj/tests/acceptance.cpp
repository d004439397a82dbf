// Copyright 2026 The apnlab Authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance runner: one PASS/FAIL line per criterion. All comparisons are
// exact. With no arguments every criterion runs; otherwise only the ids
// given on the command line.

#include <iomanip>
#include <iostream>

#include <apnlab/claims.hpp>

using namespace apnlab;

namespace {

const std::vector<std::string> kCriteria = {
    "APN-M3",       "INV-M3",        "TABLE1", "LIN-M6",   "LIN-BOUND-M3", "U1-M3", "SEVENTH-POWER",   "THICK-F0/F1",
    "GOLD-REGIONS", "F0/F1-REGIONS", "TFL",    "PERMPOLY", "BUDAGHYAN",    "M9-D8", "PROPERTY-SUITES",
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> ids(argv + 1, argv + argc);
    if (ids.empty()) ids = kCriteria;
    claims::Context ctx(0, io::SpaceCache::from_env());
    bool ok = true;
    for (const auto& id : ids) {
        const auto r = claims::run_claim(id, ctx);
        const bool pass = r.status == claims::Status::pass;
        ok = ok && pass;
        std::cout << (pass ? "PASS " : "FAIL ") << std::left << std::setw(16) << id << " tolerance=exact  "
                  << std::fixed << std::setprecision(1) << r.seconds << " s";
        if (!pass) std::cout << "  [" << claims::to_string(r.status) << "] " << r.detail;
        std::cout << "\n";
        if (!pass) {
            std::cout << "     observed: " << r.observed.dump() << "\n";
            if (!r.notes.empty()) std::cout << "     notes: " << r.notes.dump() << "\n";
        }
        std::cout.flush();
    }
    return ok ? 0 : 1;
}

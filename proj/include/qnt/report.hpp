#pragma once

// Machine-readable reports for every pipeline. All serialization in the
// project funnels through these builders so that identical inputs produce
// byte-identical output.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qnt/hl.hpp"
#include "qnt/pnt.hpp"
#include "qnt/primality.hpp"

namespace qnt::report {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

json witness_report(std::uint64_t k);

struct CountRunConfig {
    std::uint64_t k = 15;
    std::uint64_t p = 8;
    std::uint64_t r = 1;
    std::uint64_t repetitions = 1;
    std::uint64_t seed = 0;
    double dump_threshold = -1.0;

    void validate() const;
};

/// Witness count of k through the generic counting transform: exact joint
/// ancilla marginal, agreement with the analytic distribution, sampled
/// outcomes and the majority estimate of the witness count.
json count_report(const CountRunConfig& config);

json primality_report(const primality::PrimalityConfig& config,
                      double dump_threshold = -1.0);

json pnt_report(const pnt::PntResult& result, const std::string& state_dump = {});

json hl_report(const hl::HlResult& result, const std::string& state_dump = {});

/// Flatten a single-run report into one CSV row (with header).
std::string to_csv(const json& report);

/// CSV table for a list of row reports sharing one command.
std::string to_csv_table(const std::vector<json>& reports);

std::string csv_header_for(const std::string& command);

}  // namespace qnt::report

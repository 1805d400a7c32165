#ifndef GINSTAT_REPORT_HPP
#define GINSTAT_REPORT_HPP

#include <string>

#include <json.hpp>

#include "ginstat/asymptotics.hpp"
#include "ginstat/cumulants.hpp"
#include "ginstat/monte_carlo.hpp"

namespace ginstat {

using Json = nlohmann::ordered_json;

/// Outcome of a single verification check.
struct VerifyCheck {
    std::string suite;
    std::string name;
    double observed = 0.0;
    double threshold = 0.0;
    bool pass = false;
    std::string note;
};

Json to_json(const CumulantReport& report);
Json to_json(const EnsembleSummary& summary);
Json to_json(const LimitCheck& check);
Json to_json(const VerifyCheck& check);

/// Wraps results in the stable report envelope
/// {config, results[], provenance{seed, version, timestamp}}.
/// The timestamp is informational only and excluded from any comparison.
Json make_report(Json config, Json results, const Json& seed = nullptr);

std::string current_timestamp_utc();

extern const char* const kVersion;

}  // namespace ginstat

#endif

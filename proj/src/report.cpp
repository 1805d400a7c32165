#include "ginstat/report.hpp"

#include <cmath>
#include <ctime>

namespace ginstat {

const char* const kVersion = "0.1.0";

Json to_json(const CumulantReport& report) {
    Json j;
    j["type"] = "cumulant";
    j["source"] = report.method == CumulantMethod::monte_carlo ? "mc" : "exact";
    j["method"] = to_string(report.method);
    j["n"] = report.n;
    j["l"] = report.l;
    j["statistic"] = report.statistic.to_string();
    j["scaling"] = to_string(report.scaling);
    j["value"] = report.value;
    return j;
}

namespace {

Json moments_json(const MomentSummary& m) {
    Json j;
    j["mean"] = m.mean;
    j["variance"] = m.variance;
    j["std_error_mean"] = m.std_error_mean;
    j["std_error_variance"] = m.std_error_variance;
    return j;
}

}  // namespace

Json to_json(const EnsembleSummary& summary) {
    Json j;
    j["type"] = "ensemble_summary";
    j["source"] = "mc";
    j["method"] = "monte_carlo";
    j["N"] = summary.N;
    j["trials"] = summary.trials;
    j["seed"] = summary.seed;
    j["n_real"] = moments_json(summary.n_real);
    j["n_real"]["all_real_fraction"] = summary.all_real_fraction;
    j["n_real"]["all_real_std_error"] = summary.all_real_std_error;
    j["parity_violations"] = summary.parity_violations;
    Json stats = Json::array();
    for (std::size_t i = 0; i < summary.statistics.size(); ++i) {
        Json s = moments_json(summary.stat_moments[i]);
        s["spec"] = summary.statistics[i].to_string();
        stats.push_back(std::move(s));
    }
    j["statistics"] = std::move(stats);
    Json cov = Json::array();
    for (int r = 0; r < summary.covariance.rows(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < summary.covariance.cols(); ++c)
            row.push_back(summary.covariance(r, c));
        cov.push_back(std::move(row));
    }
    j["covariance"] = std::move(cov);
    return j;
}

Json to_json(const LimitCheck& check) {
    Json j;
    j["type"] = "limit_check";
    j["source"] = "limit";
    j["quantity"] = check.quantity;
    Json rows = Json::array();
    for (const auto& pt : check.finite_n) {
        Json row;
        row["n"] = pt.n;
        row["value"] = pt.value;
        if (std::isfinite(check.predicted_limit)) {
            row["limit"] = check.predicted_limit;
            row["gap"] = check.predicted_limit != 0.0
                             ? std::fabs(pt.value - check.predicted_limit) /
                                   std::fabs(check.predicted_limit)
                             : std::fabs(pt.value);
        }
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    if (std::isfinite(check.predicted_limit)) j["limit"] = check.predicted_limit;
    j[check.metric_kind.empty() ? "metric" : check.metric_kind] = check.metric;
    return j;
}

Json to_json(const VerifyCheck& check) {
    Json j;
    j["type"] = "check";
    j["source"] = "oracle";
    j["suite"] = check.suite;
    j["name"] = check.name;
    j["observed"] = check.observed;
    j["threshold"] = check.threshold;
    j["pass"] = check.pass;
    if (!check.note.empty()) j["note"] = check.note;
    return j;
}

Json make_report(Json config, Json results, const Json& seed) {
    Json j;
    j["config"] = std::move(config);
    j["results"] = std::move(results);
    Json provenance;
    provenance["seed"] = seed;
    provenance["version"] = kVersion;
    provenance["timestamp"] = current_timestamp_utc();
    j["provenance"] = std::move(provenance);
    return j;
}

std::string current_timestamp_utc() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

}  // namespace ginstat

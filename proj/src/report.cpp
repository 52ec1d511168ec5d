#include "rheston/report.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>

namespace rheston {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

nlohmann::json row_json(const TableRow& row) {
    return nlohmann::json{{"scheme", row.scheme},
                          {"n", row.num_steps},
                          {"mean", row.mean},
                          {"stat_error", row.stat_error},
                          {"ci_low", row.ci_low},
                          {"ci_high", row.ci_high},
                          {"wall_time_seconds", row.wall_time_seconds}};
}

}  // namespace

std::string table_to_csv(const std::vector<TableRow>& rows,
                         const std::optional<double>& reference) {
    std::string out = "scheme,n,mean,stat_error,ci_low,ci_high,wall_time_seconds\n";
    if (reference)
        out += "reference,," + fmt(*reference) + ",,,,\n";
    for (const auto& row : rows) {
        out += row.scheme + "," + std::to_string(row.num_steps) + "," + fmt(row.mean) + "," +
               fmt(row.stat_error) + "," + fmt(row.ci_low) + "," + fmt(row.ci_high) + "," +
               fmt(row.wall_time_seconds) + "\n";
    }
    return out;
}

std::string table_to_json(const std::vector<TableRow>& rows,
                          const std::optional<double>& reference) {
    nlohmann::json doc;
    if (reference) doc["reference"] = *reference;
    doc["rows"] = nlohmann::json::array();
    for (const auto& row : rows) doc["rows"].push_back(row_json(row));
    return doc.dump(2) + "\n";
}

std::string estimate_to_csv(const McEstimate& estimate, const std::string& scheme, int num_steps) {
    TableRow row{scheme, num_steps, estimate.mean, estimate.stat_error,
                 estimate.ci_low, estimate.ci_high, estimate.wall_time_seconds};
    return table_to_csv({row});
}

std::string estimate_to_json(const McEstimate& estimate, const std::string& scheme, int num_steps) {
    nlohmann::json doc{{"scheme", scheme},
                       {"n", num_steps},
                       {"mean", estimate.mean},
                       {"stat_error", estimate.stat_error},
                       {"ci_low", estimate.ci_low},
                       {"ci_high", estimate.ci_high},
                       {"num_paths", estimate.num_paths},
                       {"wall_time_seconds", estimate.wall_time_seconds},
                       {"fault_count", estimate.fault_count}};
    return doc.dump(2) + "\n";
}

}  // namespace rheston

#include "plancherel/records.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "plancherel/errors.hpp"

namespace plancherel {

using nlohmann::json;

std::string diagram_record(const young_diagram& d) {
    json j;
    j["rows"] = std::vector<std::int64_t>(d.rows().begin(), d.rows().end());
    return j.dump();
}

young_diagram parse_diagram_record(const std::string& line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("rows") || !j["rows"].is_array())
        throw parameter_error("BadDiagramRecord", "expected {\"rows\": [...]} on one line");
    std::vector<std::int64_t> rows;
    for (const auto& v : j["rows"]) {
        if (!v.is_number_integer()) throw parameter_error("BadDiagramRecord", "rows must be integers");
        rows.push_back(v.get<std::int64_t>());
    }
    return young_diagram::from_rows(std::move(rows));
}

namespace {

json stat_to_json(const experiment_report& rep, const stat_record& s) {
    json j;
    j["type"] = "stat";
    j["experiment"] = rep.experiment;
    j["n_or_theta"] = rep.n_or_theta;
    j["statistic"] = s.name;
    j["estimate"] = s.estimate;
    j["stderr"] = s.stderror;
    j["count"] = s.count;
    j["seed"] = rep.seed;
    if (s.target) j["target"] = *s.target;
    if (s.z) j["z"] = *s.z;
    return j;
}

}  // namespace

void write_report_records(std::ostream& os, const experiment_report& rep) {
    json header;
    header["type"] = "header";
    header["experiment"] = rep.experiment;
    header["n_or_theta"] = rep.n_or_theta;
    header["count"] = rep.count;
    header["seed"] = rep.seed;
    json params = json::object();
    for (const auto& [k, v] : rep.params) params[k] = v;
    header["params"] = params;
    os << header.dump() << "\n";
    for (const auto& s : rep.stats) os << stat_to_json(rep, s).dump() << "\n";
}

void write_report_csv(std::ostream& os, const experiment_report& rep, bool header) {
    if (header) os << "experiment,n_or_theta,statistic,estimate,stderr,count,seed\n";
    for (const auto& s : rep.stats) {
        os << rep.experiment << "," << rep.n_or_theta << "," << s.name << "," << s.estimate << ","
           << s.stderror << "," << s.count << "," << rep.seed << "\n";
    }
}

std::vector<experiment_report> read_report_records(std::istream& is) {
    std::vector<experiment_report> reports;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("type"))
            throw parameter_error("BadRecord", "unparseable report record: " + line);
        if (j["type"] == "header") {
            experiment_report rep;
            rep.experiment = j.value("experiment", std::string{});
            rep.n_or_theta = j.value("n_or_theta", 0.0);
            rep.count = j.value("count", std::int64_t{0});
            rep.seed = j.value("seed", std::uint64_t{0});
            reports.push_back(std::move(rep));
        } else if (j["type"] == "stat") {
            if (reports.empty()) {
                experiment_report rep;
                rep.experiment = j.value("experiment", std::string{});
                rep.n_or_theta = j.value("n_or_theta", 0.0);
                rep.seed = j.value("seed", std::uint64_t{0});
                reports.push_back(std::move(rep));
            }
            stat_record s;
            s.name = j.value("statistic", std::string{});
            s.estimate = j.value("estimate", 0.0);
            s.stderror = j.value("stderr", 0.0);
            s.count = j.value("count", std::int64_t{0});
            if (j.contains("target")) s.target = j["target"].get<double>();
            if (j.contains("z")) s.z = j["z"].get<double>();
            reports.back().stats.push_back(std::move(s));
        }
    }
    return reports;
}

}  // namespace plancherel

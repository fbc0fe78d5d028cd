#include "oms/report.hpp"

#include "oms/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace oms {
namespace {

std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Non-finite values travel as strings; JSON has no literal for them.
std::string json_num(double x) { return std::isfinite(x) ? num(x) : "\"" + num(x) + "\""; }

std::string json_str(const std::string& s) {
    std::string out = "\"";
    for (const char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out + "\"";
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string md_cell(const std::string& s) {
    std::string out;
    for (const char ch : s) {
        if (ch == '|') out += "\\|";
        else if (ch == '\n') out += ' ';
        else out += ch;
    }
    return out;
}

double read_num(const nlohmann::ordered_json& j) {
    if (j.is_number()) return j.get<double>();
    const auto s = j.get<std::string>();
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    throw DomainError("report: bad number '" + s + "'");
}

std::string render_json(const SuiteReport& r) {
    std::string o = "{\n";
    o += "  \"schema\": " + json_str(r.schema) + ",\n";
    o += "  \"suite\": " + json_str(r.suite) + ",\n";
    o += "  \"seed\": " + std::to_string(r.seed) + ",\n";
    o += "  \"verdict\": " + std::string(r.verdict ? "true" : "false") + ",\n";
    o += "  \"config\": {";
    bool first = true;
    for (const auto& [k, v] : r.config) {
        o += std::string(first ? "\n" : ",\n") + "    " + json_str(k) + ": " + json_str(v);
        first = false;
    }
    o += first ? "},\n" : "\n  },\n";
    o += "  \"constants\": {";
    first = true;
    for (const auto& [k, v] : r.constants) {
        o += std::string(first ? "\n" : ",\n") + "    " + json_str(k) + ": " + json_num(v);
        first = false;
    }
    o += first ? "},\n" : "\n  },\n";
    o += "  \"drift\": [";
    first = true;
    for (const auto& d : r.drift) {
        o += std::string(first ? "\n" : ",\n") + "    {\"key\": " + json_str(d.key) + ", \"base\": " + json_num(d.base) +
             ", \"refined\": " + json_num(d.refined) + ", \"drift\": " + json_num(d.drift) +
             ", \"limit\": " + json_num(d.limit) + ", \"pass\": " + (d.pass ? "true" : "false") + "}";
        first = false;
    }
    o += first ? "],\n" : "\n  ],\n";
    o += "  \"cases\": [";
    first = true;
    for (const auto& c : r.cases) {
        o += std::string(first ? "\n" : ",\n") + "    {\"id\": " + json_str(c.id) +
             ", \"inputs_hash\": " + json_str(c.inputs_hash) + ", \"lhs\": " + json_num(c.lhs) +
             ", \"rhs\": " + json_num(c.rhs) + ", \"ratio\": " + json_num(c.ratio) +
             ", \"pass\": " + (c.pass ? "true" : "false") + ", \"detail\": " + json_str(c.detail) +
             ", \"error\": " + json_str(c.error) + "}";
        first = false;
    }
    o += first ? "]\n" : "\n  ]\n";
    return o + "}\n";
}

std::string render_csv(const SuiteReport& r) {
    std::string o = "schema,suite,seed,id,inputs_hash,lhs,rhs,ratio,pass,detail,error\n";
    for (const auto& c : r.cases) {
        o += r.schema + "," + csv_field(r.suite) + "," + std::to_string(r.seed) + "," + csv_field(c.id) + "," +
             c.inputs_hash + "," + num(c.lhs) + "," + num(c.rhs) + "," + num(c.ratio) + "," +
             (c.pass ? "1" : "0") + "," + csv_field(c.detail) + "," + csv_field(c.error) + "\n";
    }
    return o;
}

std::string render_markdown(const SuiteReport& r) {
    std::string o = "# " + r.suite + "\n\n";
    o += "schema `" + r.schema + "`, seed " + std::to_string(r.seed) + ", verdict **" +
         (r.verdict ? "pass" : "fail") + "**, " + std::to_string(r.cases.size() - r.failures()) + "/" +
         std::to_string(r.cases.size()) + " cases pass\n\n";
    if (!r.constants.empty()) {
        o += "| constant | value |\n|---|---|\n";
        for (const auto& [k, v] : r.constants) o += "| " + md_cell(k) + " | " + num(v) + " |\n";
        o += "\n";
    }
    if (!r.drift.empty()) {
        o += "| frozen quantity | base | h/2 | drift | pass |\n|---|---|---|---|---|\n";
        for (const auto& d : r.drift)
            o += "| " + md_cell(d.key) + " | " + num(d.base) + " | " + num(d.refined) + " | " + num(d.drift) + " | " +
                 (d.pass ? "yes" : "no") + " |\n";
        o += "\n";
    }
    o += "| case | lhs | rhs | ratio | pass | detail |\n|---|---|---|---|---|---|\n";
    for (const auto& c : r.cases)
        o += "| " + md_cell(c.id) + " | " + num(c.lhs) + " | " + num(c.rhs) + " | " + num(c.ratio) + " | " +
             (c.pass ? "yes" : "no") + " | " + md_cell(c.error.empty() ? c.detail : "error: " + c.error) + " |\n";
    return o;
}

}  // namespace

void SuiteReport::finalize() {
    std::stable_sort(cases.begin(), cases.end(), [](const CaseRecord& a, const CaseRecord& b) { return a.id < b.id; });
    std::stable_sort(drift.begin(), drift.end(), [](const DriftRow& a, const DriftRow& b) { return a.key < b.key; });
    verdict = failures() == 0 && std::all_of(drift.begin(), drift.end(), [](const DriftRow& d) { return d.pass; });
}

std::size_t SuiteReport::failures() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CaseRecord& c) { return !c.pass; }));
}

ReportFormat parse_format(const std::string& name) {
    if (name == "json") return ReportFormat::json;
    if (name == "csv") return ReportFormat::csv;
    if (name == "markdown" || name == "md") return ReportFormat::markdown;
    throw DomainError("unknown report format '" + name + "'");
}

std::string render(const SuiteReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::json: return render_json(report);
        case ReportFormat::csv: return render_csv(report);
        case ReportFormat::markdown: return render_markdown(report);
    }
    return {};
}

void emit(const SuiteReport& report, ReportFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open report file " + path);
    out << render(report, format);
    out.flush();
    if (!out) throw DomainError("write failed for report file " + path);
}

SuiteReport parse_report_json(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw DomainError(std::string("report: invalid JSON: ") + e.what());
    }
    SuiteReport r;
    r.schema = j.at("schema").get<std::string>();
    if (r.schema != kReportSchema) throw DomainError("report: unsupported schema " + r.schema);
    r.suite = j.at("suite").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.verdict = j.at("verdict").get<bool>();
    for (const auto& [k, v] : j.at("config").items()) r.config[k] = v.get<std::string>();
    for (const auto& [k, v] : j.at("constants").items()) r.constants[k] = read_num(v);
    for (const auto& d : j.at("drift"))
        r.drift.push_back({d.at("key").get<std::string>(), read_num(d.at("base")), read_num(d.at("refined")),
                           read_num(d.at("drift")), read_num(d.at("limit")), d.at("pass").get<bool>()});
    for (const auto& c : j.at("cases"))
        r.cases.push_back({c.at("id").get<std::string>(), c.at("inputs_hash").get<std::string>(), read_num(c.at("lhs")),
                           read_num(c.at("rhs")), read_num(c.at("ratio")), c.at("pass").get<bool>(),
                           c.at("detail").get<std::string>(), c.at("error").get<std::string>()});
    return r;
}

std::string hash_bytes(std::span<const unsigned char> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace oms

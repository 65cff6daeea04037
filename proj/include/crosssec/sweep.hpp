#pragma once

// Parameter sweeps over (n, t) for the extremal quantities, with CSV and JSON
// emission.  CSV columns are fixed:
//   quantity,n,t,branch,closed_form,oracle_value,gap,status
// Rows outside a quantity's valid regime are emitted with status
// "out-of-regime" rather than dropped.  Emitted files parse back and re-emit
// byte-identically.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "crosssec/closed_forms.hpp"
#include "crosssec/jsonio.hpp"
#include "crosssec/search.hpp"

namespace crosssec {

enum class Quantity { MaxLine, MinLine, MaxHyp, MinSlab, SimplexMin, SimplexMax };

inline const char* quantity_name(Quantity q) {
    switch (q) {
        case Quantity::MaxLine: return "max-line";
        case Quantity::MinLine: return "min-line";
        case Quantity::MaxHyp: return "max-hyp";
        case Quantity::MinSlab: return "min-slab";
        case Quantity::SimplexMin: return "simplex-min";
        case Quantity::SimplexMax: return "simplex-max";
    }
    return "?";
}

inline Quantity parse_quantity(const std::string& s) {
    if (s == "max-line") return Quantity::MaxLine;
    if (s == "min-line") return Quantity::MinLine;
    if (s == "max-hyp") return Quantity::MaxHyp;
    if (s == "min-slab") return Quantity::MinSlab;
    if (s == "simplex-min") return Quantity::SimplexMin;
    if (s == "simplex-max") return Quantity::SimplexMax;
    throw std::invalid_argument("unknown quantity: " + s);
}

struct SweepSpec {
    Quantity quantity = Quantity::MaxLine;
    int n_min = 3;
    int n_max = 3;
    double t_start = 0.0;
    double t_stop = 1.0;
    double t_step = 0.1;
    bool certify = false;
    enum class Format { Csv, Json } format = Format::Csv;
    std::uint64_t seed = 42;
    int search_starts = 64;
};

/// Everything needed to reproduce a sweep bit-for-bit.
struct RunManifest {
    std::string tool = "crosssec";
    std::string version;
    std::string command;
    std::uint64_t seed = 0;
    std::string timestamp;  // informational; carried verbatim through round-trips
    std::vector<std::pair<std::string, std::string>> config;
};

struct SweepRow {
    std::string quantity;
    int n = 0;
    double t = 0.0;
    std::string branch;     // empty when out of regime
    bool has_closed = false;
    double closed_form = 0.0;
    bool has_oracle = false;
    double oracle_value = 0.0;
    double gap = 0.0;
    std::string status;  // "ok" or "out-of-regime"
};

struct SweepResult {
    RunManifest manifest;
    std::vector<SweepRow> rows;
};

namespace detail {

inline bool in_regime(Quantity q, int n, double t) {
    switch (q) {
        case Quantity::MaxLine: return n >= 2 && t >= 0.0 && t <= 1.0;
        case Quantity::MinLine: return n >= 2 && t >= 0.0 && t <= 1.0;
        case Quantity::MaxHyp:
        case Quantity::MinSlab: return n >= 3 && t > kInvSqrt2 && t <= 1.0;
        case Quantity::SimplexMin:
        case Quantity::SimplexMax: return n >= 3;
    }
    return false;
}

}  // namespace detail

inline SweepResult run_sweep(const SweepSpec& spec, const std::string& version,
                             const std::string& timestamp) {
    if (spec.t_step <= 0.0) throw std::invalid_argument("sweep: t-step must be positive");
    if (spec.n_min > spec.n_max || spec.n_min < 2)
        throw std::invalid_argument("sweep: bad dimension range");

    SweepResult result;
    result.manifest.version = version;
    result.manifest.command = "sweep";
    result.manifest.seed = spec.seed;
    result.manifest.timestamp = timestamp;
    result.manifest.config = {
        {"quantity", quantity_name(spec.quantity)},
        {"n_min", std::to_string(spec.n_min)},
        {"n_max", std::to_string(spec.n_max)},
        {"t_start", format_double(spec.t_start)},
        {"t_stop", format_double(spec.t_stop)},
        {"t_step", format_double(spec.t_step)},
        {"certify", spec.certify ? "true" : "false"},
        {"search_starts", std::to_string(spec.search_starts)},
    };

    const bool simplex =
        spec.quantity == Quantity::SimplexMin || spec.quantity == Quantity::SimplexMax;
    for (int n = spec.n_min; n <= spec.n_max; ++n) {
        std::vector<double> ts;
        if (simplex) {
            ts.push_back(0.0);  // central sections: no distance parameter
        } else {
            const long steps =
                static_cast<long>(std::floor((spec.t_stop - spec.t_start) / spec.t_step + 1e-9));
            for (long i = 0; i <= steps; ++i) ts.push_back(spec.t_start + static_cast<double>(i) * spec.t_step);
        }
        for (double t : ts) {
            SweepRow row;
            row.quantity = quantity_name(spec.quantity);
            row.n = n;
            row.t = t;
            if (!detail::in_regime(spec.quantity, n, t)) {
                row.status = "out-of-regime";
                result.rows.push_back(row);
                continue;
            }
            row.status = "ok";
            SearchConfig cfg;
            cfg.starts = spec.search_starts;
            cfg.seed = split_seed(spec.seed, static_cast<std::uint64_t>(n) * 10007u +
                                                 static_cast<std::uint64_t>(t * 1e6));
            switch (spec.quantity) {
                case Quantity::MaxLine: {
                    const ExtremalAnswer a = max_line_length(n, t);
                    row.branch = a.branch;
                    row.has_closed = true;
                    row.closed_form = a.value;
                    if (spec.certify) {
                        cfg.mode = SearchConfig::Mode::Maximize;
                        const SearchReport r = search_lines_at_distance(n, t, cfg, a.value);
                        row.has_oracle = true;
                        row.oracle_value = r.best_value;
                        row.gap = *r.certified_gap;
                    }
                    break;
                }
                case Quantity::MinLine: {
                    const ExtremalAnswer a = min_line_length(n, t);
                    row.branch = a.branch;
                    row.has_closed = true;
                    row.closed_form = a.value;
                    if (spec.certify) {
                        cfg.mode = SearchConfig::Mode::Minimize;
                        const SearchReport r = search_lines_at_distance(n, t, cfg, a.value);
                        row.has_oracle = true;
                        row.oracle_value = r.best_value;
                        row.gap = *r.certified_gap;
                    }
                    break;
                }
                case Quantity::MaxHyp: {
                    const ExtremalAnswer a = max_hyperplane_volume(n, t);
                    row.branch = a.branch;
                    row.has_closed = true;
                    row.closed_form = a.value;
                    if (spec.certify && t < 1.0) {
                        const SearchReport r = search_hyperplanes_at_distance(
                            n, t, cfg, HyperplaneObjective::SectionVolume, a.value);
                        row.has_oracle = true;
                        row.oracle_value = r.best_value;
                        row.gap = *r.certified_gap;
                    }
                    break;
                }
                case Quantity::MinSlab: {
                    const ExtremalAnswer a = min_slab_volume(n, t);
                    row.branch = a.branch;
                    row.has_closed = true;
                    row.closed_form = a.value;
                    if (spec.certify && t < 1.0) {
                        const SearchReport r = search_hyperplanes_at_distance(
                            n, t, cfg, HyperplaneObjective::SlabVolume, a.value);
                        row.has_oracle = true;
                        row.oracle_value = r.best_value;
                        row.gap = *r.certified_gap;
                    }
                    break;
                }
                case Quantity::SimplexMin:
                case Quantity::SimplexMax: {
                    const auto [mn, mx] = simplex_extremes(n);
                    const bool want_min = spec.quantity == Quantity::SimplexMin;
                    row.branch = want_min ? "edge-parallel" : "vertex-chord";
                    row.has_closed = true;
                    row.closed_form = want_min ? mn : mx;
                    if (spec.certify) {
                        cfg.mode = want_min ? SearchConfig::Mode::Minimize
                                            : SearchConfig::Mode::Maximize;
                        const SearchReport r =
                            search_simplex_central_lines(n, cfg, row.closed_form);
                        row.has_oracle = true;
                        row.oracle_value = r.best_value;
                        row.gap = *r.certified_gap;
                    }
                    break;
                }
            }
            result.rows.push_back(row);
        }
    }
    return result;
}

inline std::string emit_csv(const SweepResult& result) {
    std::string out;
    const auto& m = result.manifest;
    out += "# tool=" + m.tool + " version=" + m.version + " command=" + m.command +
           " seed=" + std::to_string(m.seed) + " timestamp=" + m.timestamp + "\n";
    for (const auto& [k, v] : m.config) out += "# " + k + "=" + v + "\n";
    out += "quantity,n,t,branch,closed_form,oracle_value,gap,status\n";
    for (const auto& r : result.rows) {
        out += r.quantity + ',' + std::to_string(r.n) + ',' + format_double(r.t) + ',' +
               r.branch + ',';
        if (r.has_closed) out += format_double(r.closed_form);
        out += ',';
        if (r.has_oracle) out += format_double(r.oracle_value);
        out += ',';
        if (r.has_oracle) out += format_double(r.gap);
        out += ',' + r.status + '\n';
    }
    return out;
}

/// Parse a CSV sweep produced by emit_csv.  Manifest comment lines are kept
/// verbatim so emit(parse(text)) == text byte-for-byte.
struct ParsedCsv {
    std::vector<std::string> manifest_lines;
    std::vector<SweepRow> rows;
};

inline ParsedCsv parse_csv(const std::string& text) {
    ParsedCsv parsed;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            parsed.manifest_lines.push_back(line);
            continue;
        }
        if (!header_seen) {
            if (line != "quantity,n,t,branch,closed_form,oracle_value,gap,status")
                throw std::invalid_argument("parse_csv: unexpected header: " + line);
            header_seen = true;
            continue;
        }
        std::vector<std::string> fields;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(cur);
        if (fields.size() != 8) throw std::invalid_argument("parse_csv: bad row: " + line);
        SweepRow r;
        r.quantity = fields[0];
        r.n = std::stoi(fields[1]);
        r.t = std::stod(fields[2]);
        r.branch = fields[3];
        r.has_closed = !fields[4].empty();
        if (r.has_closed) r.closed_form = std::stod(fields[4]);
        r.has_oracle = !fields[5].empty();
        if (r.has_oracle) r.oracle_value = std::stod(fields[5]);
        if (!fields[6].empty()) r.gap = std::stod(fields[6]);
        r.status = fields[7];
        parsed.rows.push_back(std::move(r));
    }
    return parsed;
}

inline std::string emit_csv(const ParsedCsv& parsed) {
    std::string out;
    for (const auto& l : parsed.manifest_lines) out += l + "\n";
    out += "quantity,n,t,branch,closed_form,oracle_value,gap,status\n";
    for (const auto& r : parsed.rows) {
        out += r.quantity + ',' + std::to_string(r.n) + ',' + format_double(r.t) + ',' +
               r.branch + ',';
        if (r.has_closed) out += format_double(r.closed_form);
        out += ',';
        if (r.has_oracle) out += format_double(r.oracle_value);
        out += ',';
        if (r.has_oracle) out += format_double(r.gap);
        out += ',' + r.status + '\n';
    }
    return out;
}

inline JsonValue manifest_json(const RunManifest& m) {
    JsonValue j = JsonValue::object();
    j.set("tool", m.tool);
    j.set("version", m.version);
    j.set("command", m.command);
    j.set("seed", static_cast<unsigned long long>(m.seed));
    if (!m.timestamp.empty()) j.set("timestamp", m.timestamp);
    JsonValue cfg = JsonValue::object();
    for (const auto& [k, v] : m.config) cfg.set(k, v);
    j.set("config", std::move(cfg));
    return j;
}

inline std::string emit_json(const SweepResult& result) {
    JsonValue root = JsonValue::object();
    root.set("manifest", manifest_json(result.manifest));
    JsonValue rows = JsonValue::array();
    for (const auto& r : result.rows) {
        JsonValue row = JsonValue::object();
        row.set("quantity", r.quantity);
        row.set("n", r.n);
        row.set("t", r.t);
        row.set("branch", r.branch);
        row.set("closed_form", r.has_closed ? JsonValue(r.closed_form) : JsonValue());
        row.set("oracle_value", r.has_oracle ? JsonValue(r.oracle_value) : JsonValue());
        row.set("gap", r.has_oracle ? JsonValue(r.gap) : JsonValue());
        row.set("status", r.status);
        rows.push(std::move(row));
    }
    root.set("rows", std::move(rows));
    return root.dump();
}

/// Key-value configuration file: one `key = value` pair per line, `#` starts
/// a comment.  Recognized keys mirror the sweep flags.
inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

}  // namespace crosssec

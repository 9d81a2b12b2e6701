#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "singlink/arith.hpp"
#include "singlink/candidate.hpp"
#include "singlink/report.hpp"
#include "singlink/search.hpp"

namespace singlink {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Fixture rows

inline constexpr std::string_view kTableHeader = "w0,w1,w2,w3,w4,d,mu,h3_order";

struct TableRow {
    std::array<Weight, 5> weights{};
    Weight degree = 0;
    Integer mu;
    Integer h3_order;

    Weight index() const { return weight_sum(weights) - degree; }
    std::string label() const { return format_weights(weights) + " d=" + std::to_string(degree); }

    friend bool operator==(const TableRow&, const TableRow&) = default;
};

class TableParseError : public std::runtime_error {
public:
    TableParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// What to do with rows whose degree is not sum(w) - 1. The printed table has
/// a few such rows; verification keeps them so they can fail visibly.
enum class IndexPolicy { reject, keep };

namespace detail {

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline Weight parse_positive(std::string_view field, std::size_t line, const char* name) {
    Integer v;
    try {
        v = parse_integer(field);
    } catch (const std::invalid_argument&) {
        throw TableParseError(line, std::string(name) + " is not an integer: '" + std::string(field) + "'");
    }
    if (v < 1 || !fits_int64(v)) throw TableParseError(line, std::string(name) + " out of range: " + v.get_str());
    return to_int64(v);
}

}  // namespace detail

/// Parses the fixture CSV. Blank lines and lines starting with '#' are
/// skipped; the first remaining line must be the header. Text with no header
/// at all yields no rows.
inline std::vector<TableRow> parse_table(std::string_view text, IndexPolicy policy = IndexPolicy::reject) {
    std::vector<TableRow> rows;
    bool header_seen = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? text.size() : end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != kTableHeader)
                throw TableParseError(line_no, "expected header '" + std::string(kTableHeader) + "'");
            header_seen = true;
            continue;
        }
        auto fields = detail::split(line, ',');
        if (fields.size() != 8)
            throw TableParseError(line_no, "expected 8 columns, got " + std::to_string(fields.size()));
        TableRow row;
        static constexpr const char* names[] = {"w0", "w1", "w2", "w3", "w4", "d"};
        for (std::size_t i = 0; i < 5; ++i) row.weights[i] = detail::parse_positive(fields[i], line_no, names[i]);
        row.degree = detail::parse_positive(fields[5], line_no, names[5]);
        try {
            row.mu = parse_integer(fields[6]);
            row.h3_order = parse_integer(fields[7]);
        } catch (const std::invalid_argument& e) {
            throw TableParseError(line_no, e.what());
        }
        if (row.mu < 1 || row.h3_order < 1) throw TableParseError(line_no, "mu and h3_order must be positive");
        if (policy == IndexPolicy::reject && row.index() != 1)
            throw TableParseError(line_no, "degree " + std::to_string(row.degree) + " is not sum(w) - 1 for " +
                                               format_weights(row.weights));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string emit_table(const std::vector<TableRow>& rows) {
    std::string out(kTableHeader);
    out += '\n';
    for (const auto& r : rows) {
        for (Weight w : r.weights) out += std::to_string(w) + ',';
        out += std::to_string(r.degree) + ',' + r.mu.get_str() + ',' + r.h3_order.get_str() + '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Verification

struct FieldMismatch {
    std::string field;
    std::string expected;
    std::string actual;
};

struct RowVerification {
    TableRow row;
    std::vector<FieldMismatch> mismatches;

    bool passed() const { return mismatches.empty(); }
    bool failed(std::string_view field) const {
        return std::any_of(mismatches.begin(), mismatches.end(), [&](const auto& m) { return m.field == field; });
    }
};

struct VerificationReport {
    std::vector<RowVerification> rows;

    std::size_t total() const { return rows.size(); }
    std::size_t passed() const {
        return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.passed(); }));
    }
    bool all_passed() const { return passed() == total(); }
    std::string summary() const { return std::to_string(passed()) + "/" + std::to_string(total()) + " pass"; }
};

inline RowVerification verify_row(const TableRow& row) {
    RowVerification out{row, {}};
    auto check = [&](bool ok, std::string field, std::string expected, std::string actual) {
        if (!ok) out.mismatches.push_back({std::move(field), std::move(expected), std::move(actual)});
    };
    auto yes_no = [](bool b) { return std::string(b ? "true" : "false"); };

    std::vector<Weight> sorted(row.weights.begin(), row.weights.end());
    std::sort(sorted.begin(), sorted.end());
    check(std::equal(sorted.begin(), sorted.end(), row.weights.begin()), "sorted", "true", "false");
    try {
        LinkReport r = classify(Candidate(sorted, row.degree));
        check(r.index == 1, "index", "1", std::to_string(r.index));
        check(r.well_formed, "well_formed", "true", yes_no(r.well_formed));
        check(r.quasi_smooth.condition_i.ok, "quasi_smooth.c1", "true", yes_no(r.quasi_smooth.condition_i.ok));
        check(r.quasi_smooth.condition_ii.ok, "quasi_smooth.c2", "true", yes_no(r.quasi_smooth.condition_ii.ok));
        check(r.quasi_smooth.condition_iii.ok, "quasi_smooth.c3", "true", yes_no(r.quasi_smooth.condition_iii.ok));
        check(r.b3 && *r.b3 == 0, "b3", "0", r.b3 ? r.b3->get_str() : "null");
        check(r.milnor_number == Rational(row.mu), "mu", row.mu.get_str(), to_string(r.milnor_number));
        check(r.torsion_order && *r.torsion_order == row.h3_order, "h3_order", row.h3_order.get_str(),
              r.torsion_order ? r.torsion_order->get_str() : "null");
        if (r.index >= 1)
            check(r.ke_sufficient, "ke_sufficient", "true", yes_no(r.ke_sufficient));
        else
            check(false, "ke_sufficient", "true", "undefined (index < 1)");
    } catch (const std::exception& e) {
        check(false, "internal", "ok", e.what());
    }
    return out;
}

/// Rows are verified independently (optionally on `jobs` threads); the
/// report keeps input order.
inline VerificationReport verify_table(const std::vector<TableRow>& rows, unsigned jobs = 1) {
    VerificationReport report;
    report.rows.resize(rows.size());
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(rows.size(), 1))));
    auto work = [&](unsigned part) {
        for (std::size_t i = part; i < rows.size(); i += jobs) report.rows[i] = verify_row(rows[i]);
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned p = 0; p < jobs; ++p) pool.emplace_back(work, p);
        for (auto& t : pool) t.join();
    }
    return report;
}

// ---------------------------------------------------------------------------
// Twins

struct TwinKey {
    Weight degree = 0;
    Integer mu;
    Integer h3_order;

    friend bool operator==(const TwinKey&, const TwinKey&) = default;
    friend bool operator<(const TwinKey& a, const TwinKey& b) {
        return std::tie(a.degree, a.mu, a.h3_order) < std::tie(b.degree, b.mu, b.h3_order);
    }
};

struct TwinGroup {
    TwinKey key;
    std::vector<TableRow> members;  // ordered by weights
};

/// Rows sharing (d, mu, |H3|), groups of two or more, ordered by key.
inline std::vector<TwinGroup> find_twins(const std::vector<TableRow>& rows) {
    std::map<TwinKey, std::vector<TableRow>> buckets;
    for (const auto& r : rows) buckets[TwinKey{r.degree, r.mu, r.h3_order}].push_back(r);
    std::vector<TwinGroup> out;
    for (auto& [key, members] : buckets) {
        if (members.size() < 2) continue;
        std::sort(members.begin(), members.end(),
                  [](const TableRow& a, const TableRow& b) { return a.weights < b.weights; });
        out.push_back({key, std::move(members)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Serialization

enum class Format { csv, json };

inline Format parse_format(std::string_view name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw std::invalid_argument("unsupported format '" + std::string(name) + "' (expected csv or json)");
}

namespace detail {

inline ordered_json integer_json(const Integer& n) {
    if (fits_int64(n)) return to_int64(n);
    return n.get_str();
}

inline ordered_json shortcut_json(const Shortcut& s) {
    ordered_json j;
    if (const auto* c = std::get_if<CoprimeShortcut>(&s)) {
        j["kind"] = "lemma34";
        j["N"] = to_string(c->multiplicity);
        j["r01"] = c->r01 ? ordered_json(to_string(*c->r01)) : ordered_json(nullptr);
        j["r23"] = c->r23 ? ordered_json(to_string(*c->r23)) : ordered_json(nullptr);
    } else if (const auto* d = std::get_if<DegreeSplit>(&s)) {
        j["kind"] = "lemma312";
        j["m3"] = d->triple_numerator;
        j["m2"] = d->pair_numerator;
        j["l"] = to_string(d->triple_multiplicity);
        j["n"] = to_string(d->pair_multiplicity);
    } else {
        j["kind"] = "general";
    }
    return j;
}

inline std::string shortcut_label(const Shortcut& s) {
    if (std::holds_alternative<CoprimeShortcut>(s)) return "lemma34";
    if (std::holds_alternative<DegreeSplit>(s)) return "lemma312";
    return "general";
}

inline std::string csv_bool(bool b) { return b ? "true" : "false"; }

}  // namespace detail

inline ordered_json to_json(const LinkReport& r) {
    ordered_json j;
    j["weights"] = std::vector<Weight>(r.candidate.weights().begin(), r.candidate.weights().end());
    j["degree"] = r.candidate.degree();
    j["index"] = r.index;
    j["well_formed"] = r.well_formed;
    j["quasi_smooth"] = {{"c1", r.quasi_smooth.condition_i.ok},
                         {"c2", r.quasi_smooth.condition_ii.ok},
                         {"c3", r.quasi_smooth.condition_iii.ok}};
    j["milnor_number"] = to_string(r.milnor_number);
    if (r.divisor) {
        ordered_json terms = ordered_json::array();
        for (const auto& [period, coeff] : r.divisor->terms())
            terms.push_back({{"period", detail::integer_json(period)}, {"coeff", detail::integer_json(coeff.get_num())}});
        j["divisor"] = std::move(terms);
    } else {
        j["divisor"] = nullptr;
    }
    j["b3"] = r.b3 ? detail::integer_json(*r.b3) : ordered_json(nullptr);
    j["h3_order"] = r.torsion_order ? ordered_json(r.torsion_order->get_str()) : ordered_json(nullptr);
    if (r.torsion_factored) {
        ordered_json f = ordered_json::array();
        for (const auto& pp : r.torsion_factored->factors())
            f.push_back(ordered_json::array({detail::integer_json(pp.prime), pp.exponent}));
        j["h3_factored"] = std::move(f);
    } else {
        j["h3_factored"] = nullptr;
    }
    j["ke_sufficient"] = r.ke_sufficient;
    j["shortcut"] = detail::shortcut_json(r.shortcut);
    return j;
}

inline constexpr std::string_view kReportCsvHeader =
    "w0,w1,w2,w3,w4,d,index,well_formed,c1,c2,c3,mu,b3,h3_order,h3_factored,ke_sufficient,shortcut";

inline std::string to_csv_line(const LinkReport& r) {
    using detail::csv_bool;
    std::string out;
    for (Weight w : r.candidate.weights()) out += std::to_string(w) + ',';
    out += std::to_string(r.candidate.degree()) + ',' + std::to_string(r.index) + ',';
    out += csv_bool(r.well_formed) + ',' + csv_bool(r.quasi_smooth.condition_i.ok) + ',' +
           csv_bool(r.quasi_smooth.condition_ii.ok) + ',' + csv_bool(r.quasi_smooth.condition_iii.ok) + ',';
    out += to_string(r.milnor_number) + ',';
    out += (r.b3 ? r.b3->get_str() : "") + ',';
    out += (r.torsion_order ? r.torsion_order->get_str() : "") + ',';
    out += (r.torsion_factored ? r.torsion_factored->to_string() : "") + ',';
    out += csv_bool(r.ke_sufficient) + ',' + detail::shortcut_label(r.shortcut);
    return out;
}

/// Deterministic serialization: a JSON array (pretty-printed, 2 spaces) or a
/// CSV with header. Output always ends in a newline.
inline std::string emit_report(const std::vector<LinkReport>& reports, Format format) {
    if (format == Format::json) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        return arr.dump(2) + '\n';
    }
    std::string out(kReportCsvHeader);
    out += '\n';
    for (const auto& r : reports) out += to_csv_line(r) + '\n';
    return out;
}

inline std::string emit_report(const std::vector<LinkReport>& reports, std::string_view format) {
    return emit_report(reports, parse_format(format));
}

inline std::string emit_verification(const VerificationReport& v, Format format) {
    if (format == Format::json) {
        ordered_json rows = ordered_json::array();
        for (const auto& rv : v.rows) {
            ordered_json m = ordered_json::array();
            for (const auto& f : rv.mismatches)
                m.push_back({{"field", f.field}, {"expected", f.expected}, {"actual", f.actual}});
            rows.push_back({{"weights", rv.row.weights},
                            {"degree", rv.row.degree},
                            {"pass", rv.passed()},
                            {"mismatches", std::move(m)}});
        }
        ordered_json j;
        j["summary"] = {{"passed", v.passed()}, {"total", v.total()}};
        j["rows"] = std::move(rows);
        return j.dump(2) + '\n';
    }
    std::string out = "w0,w1,w2,w3,w4,d,pass,mismatches\n";
    for (const auto& rv : v.rows) {
        for (Weight w : rv.row.weights) out += std::to_string(w) + ',';
        out += std::to_string(rv.row.degree) + ',' + detail::csv_bool(rv.passed()) + ',';
        std::string diffs;
        for (const auto& f : rv.mismatches) {
            if (!diffs.empty()) diffs += ';';
            diffs += f.field + ":" + f.expected + "->" + f.actual;
        }
        // Values never contain commas, but error text might.
        std::replace(diffs.begin(), diffs.end(), ',', ' ');
        out += diffs + '\n';
    }
    return out;
}

inline std::string emit_twins(const std::vector<TwinGroup>& groups, Format format) {
    if (format == Format::json) {
        ordered_json arr = ordered_json::array();
        for (const auto& g : groups) {
            ordered_json members = ordered_json::array();
            for (const auto& m : g.members) members.push_back(m.weights);
            arr.push_back({{"degree", g.key.degree},
                           {"mu", g.key.mu.get_str()},
                           {"h3_order", g.key.h3_order.get_str()},
                           {"size", g.members.size()},
                           {"members", std::move(members)}});
        }
        return arr.dump(2) + '\n';
    }
    std::string out = "group,d,mu,h3_order,w0,w1,w2,w3,w4\n";
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const auto& g = groups[i];
        for (const auto& m : g.members) {
            out += std::to_string(i + 1) + ',' + std::to_string(g.key.degree) + ',' + g.key.mu.get_str() + ',' +
                   g.key.h3_order.get_str();
            for (Weight w : m.weights) out += ',' + std::to_string(w);
            out += '\n';
        }
    }
    return out;
}

}  // namespace singlink

// singlink: invariants of links of weighted-homogeneous hypersurface singularities.
//
//   singlink analyze --weights 17,34,75,125,175
//   singlink search --max-degree 500 --rhs-only --require-ke --jobs 4
//   singlink verify-table --fixture data/rhs_table.csv
//   singlink twins --fixture data/rhs_table.csv
//
// Exit status: 0 success, 1 verification mismatch or internal inconsistency,
// 2 invalid input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "singlink/singlink.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kBadInput = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<singlink::Weight> parse_weight_list(const std::string& text) {
    std::vector<singlink::Weight> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        singlink::Integer v;
        try {
            v = singlink::parse_integer(item);
        } catch (const std::invalid_argument&) {
            throw UsageError("weight '" + item + "' is not an integer");
        }
        if (v < 1 || !singlink::fits_int64(v)) throw UsageError("weight '" + item + "' must be a positive 64-bit integer");
        out.push_back(singlink::to_int64(v));
    }
    if (!text.empty() && text.back() == ',') throw UsageError("trailing comma in --weights");
    if (out.size() != 5) throw UsageError("--weights needs exactly 5 values, got " + std::to_string(out.size()));
    return out;
}

std::size_t expansion_cap() {
    const char* env = std::getenv("SINGLINK_EXPANSION_CAP");
    if (!env) return singlink::kDefaultExpansionCap;
    singlink::Integer v;
    try {
        v = singlink::parse_integer(env);
    } catch (const std::invalid_argument&) {
        throw UsageError(std::string("SINGLINK_EXPANSION_CAP is not a decimal integer: '") + env + "'");
    }
    if (v < 0 || !singlink::fits_int64(v)) throw UsageError("SINGLINK_EXPANSION_CAP out of range");
    return static_cast<std::size_t>(singlink::to_int64(v));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

std::vector<singlink::TableRow> load_fixture(const std::string& path) {
    try {
        return singlink::parse_table(read_file(path), singlink::IndexPolicy::keep);
    } catch (const singlink::TableParseError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

// Dense expansion of Delta(t) as an independent check on mu and |H3|.
bool cross_check(const singlink::LinkReport& r, std::size_t cap) {
    if (!r.divisor) return true;
    auto poly = singlink::alexander_polynomial(*r.divisor, cap);
    if (!poly) {
        std::cerr << "note: Alexander polynomial expansion skipped (numerator degree above cap " << cap << ")\n";
        return true;
    }
    bool ok = singlink::Rational(static_cast<long>(poly->degree())) == r.milnor_number;
    if (!ok)
        std::cerr << "error: deg Delta = " << poly->degree() << " but mu = " << singlink::to_string(r.milnor_number)
                  << "\n";
    if (r.torsion_order && poly->value_at(1) != *r.torsion_order) {
        std::cerr << "error: Delta(1) = " << poly->value_at(1).get_str() << " but |H3| = " << r.torsion_order->get_str()
                  << "\n";
        ok = false;
    }
    return ok;
}

int run_analyze(const std::string& weights_text, std::optional<singlink::Weight> degree, const std::string& format) {
    auto weights = parse_weight_list(weights_text);
    if (!std::is_sorted(weights.begin(), weights.end())) {
        std::sort(weights.begin(), weights.end());
        std::cerr << "warning: weights sorted to " << singlink::format_weights(weights) << "\n";
    }
    if (singlink::weight_gcd(weights) != 1)
        throw UsageError("weights " + singlink::format_weights(weights) + " have gcd " +
                         std::to_string(singlink::weight_gcd(weights)) + " (must be 1)");
    const singlink::Weight d = degree.value_or(singlink::weight_sum(weights) - 1);
    if (d < 1) throw UsageError("degree must be positive, got " + std::to_string(d));
    const auto fmt = singlink::parse_format(format);
    const std::size_t cap = expansion_cap();

    auto report = singlink::classify(singlink::Candidate(weights, d));
    const bool ok = cross_check(report, cap);
    std::string out;
    if (fmt == singlink::Format::json)
        out = singlink::to_json(report).dump(2) + "\n";
    else
        out = singlink::emit_report({report}, fmt);
    std::cout << out;
    return ok ? kOk : kMismatch;
}

int run_search(const singlink::SearchConfig& cfg, const std::string& out_path, const std::string& format) {
    const auto fmt = singlink::parse_format(format);
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    auto results = singlink::search(cfg);
    write_output(singlink::emit_report(results, fmt), out_path);
    std::cerr << results.size() << " result(s)\n";
    return kOk;
}

int run_verify(const std::string& fixture, const std::string& format, unsigned jobs) {
    const auto fmt = singlink::parse_format(format);
    auto rows = load_fixture(fixture);
    if (rows.empty()) std::cerr << "warning: fixture " << fixture << " has no rows\n";
    auto report = singlink::verify_table(rows, jobs);
    std::cout << singlink::emit_verification(report, fmt);
    for (const auto& rv : report.rows) {
        if (rv.passed()) continue;
        std::cerr << "FAIL " << rv.row.label() << ":";
        for (const auto& m : rv.mismatches) std::cerr << " " << m.field << " expected " << m.expected << " got " << m.actual << ";";
        std::cerr << "\n";
    }
    std::cerr << report.summary() << "\n";
    return report.all_passed() ? kOk : kMismatch;
}

int run_twins(const std::string& fixture, const std::string& format) {
    const auto fmt = singlink::parse_format(format);
    auto groups = singlink::find_twins(load_fixture(fixture));
    std::cout << singlink::emit_twins(groups, fmt);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariants of links of weighted-homogeneous hypersurface singularities"};
    app.require_subcommand(1);

    std::string format = "json";
    auto* analyze = app.add_subcommand("analyze", "Report invariants for one weight vector");
    std::string weights;
    std::optional<singlink::Weight> degree;
    analyze->add_option("--weights", weights, "w0,w1,w2,w3,w4")->required();
    analyze->add_option("--degree", degree, "degree d (default sum(w) - 1)");
    analyze->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* search = app.add_subcommand("search", "Enumerate and classify candidates");
    singlink::SearchConfig cfg;
    std::string out_path;
    search->add_option("--max-degree", cfg.max_degree, "largest degree searched")->required();
    search->add_option("--index", cfg.index, "Fano index (default 1)");
    search->add_flag("--require-ke", cfg.require_ke, "keep only candidates passing the KE inequality");
    search->add_flag("--rhs-only", cfg.rhs_only, "keep only rational homology spheres");
    search->add_option("--jobs", cfg.partitions, "worker threads");
    search->add_option("--out", out_path, "output path (default stdout)");
    search->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* verify = app.add_subcommand("verify-table", "Recompute every fixture row");
    std::string fixture;
    unsigned jobs = 1;
    verify->add_option("--fixture", fixture, "fixture CSV")->required();
    verify->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    verify->add_option("--jobs", jobs, "worker threads");

    auto* twins = app.add_subcommand("twins", "Group fixture rows sharing (d, mu, |H3|)");
    twins->add_option("--fixture", fixture, "fixture CSV")->required();
    twins->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    }

    try {
        if (*analyze) return run_analyze(weights, degree, format);
        if (*search) return run_search(cfg, out_path, format);
        if (*verify) return run_verify(fixture, format, jobs);
        if (*twins) return run_twins(fixture, format);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const singlink::InvalidCandidate& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kMismatch;
    }
    return kBadInput;
}

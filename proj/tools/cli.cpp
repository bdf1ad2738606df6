#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "motzkin/motzkin.hpp"

namespace motzkin::cli {
namespace {

using nlohmann::json;

class usage_error : public error {
public:
    using error::error;
};

struct RunConfig {
    std::string command;
    std::string scan_test;
    std::optional<std::uint64_t> p;
    std::int64_t a = 1;
    std::int64_t b = 1;
    std::optional<std::string> seq;
    std::optional<std::string> alpha;
    std::optional<std::uint64_t> n;
    std::optional<std::uint32_t> digits;
    std::optional<std::uint64_t> max;
    std::string format = "text";
    unsigned jobs = 1;
    std::uint64_t budget = kDefaultEnumerationBudget;
    std::optional<std::string> checkpoint;
    bool exact_only = false;
    bool validate = false;

    SeqParams params() const { return {a, b}; }
};

/// One command's result in all three renderings.
struct Output {
    json doc;
    std::vector<std::string> text;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    std::vector<std::string> notes;  // stderr in text mode
    int code = kSuccess;
};

std::string show(const ExactRatio& r) { return r.to_string() + " (" + r.decimal() + ")"; }

json ratio_json(const ExactRatio& r) { return {{"rational", r.to_string()}, {"decimal", r.decimal()}}; }

json ratio_json(const std::optional<ExactRatio>& r) { return r ? ratio_json(*r) : json(nullptr); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

template <class Range>
std::string join(const Range& items, const char* sep) {
    std::ostringstream os;
    bool first = true;
    for (const auto& item : items) {
        if (!first) os << sep;
        os << item;
        first = false;
    }
    return os.str();
}

Output start(const RunConfig& cfg) {
    Output o;
    o.doc = {{"schema_version", kSchemaVersion}, {"command", cfg.command}, {"params", {{"a", cfg.a}, {"b", cfg.b}}}};
    return o;
}

Modulus require_p(const RunConfig& cfg) {
    if (!cfg.p) throw usage_error(cfg.command + " needs --p");
    return Modulus(*cfg.p);
}

// ---------------------------------------------------------------------------
// Sequences

struct Target {
    SequenceId id;
    ShiftCombo combo;
    std::int64_t divisor = 1;
    std::optional<LaurentPoly> weight;

    std::string name() const { return std::string(to_string(id)); }
};

std::vector<std::int64_t> parse_alpha(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw usage_error("--alpha expects a comma-separated list of integers, got '" + text + "'");
        }
    }
    return out;
}

Target resolve_target(const RunConfig& cfg, SequenceId fallback) {
    const SequenceId id = cfg.seq ? *parse_sequence_id(*cfg.seq) : fallback;
    if (id == SequenceId::Custom) {
        if (!cfg.alpha) throw usage_error("--seq custom needs --alpha");
        return {id, ShiftCombo(parse_alpha(*cfg.alpha)), 1, std::nullopt};
    }
    if (cfg.alpha) throw usage_error("--alpha is only valid with --seq custom");
    const NamedSequence named = named_sequence(id, cfg.params());
    return {id, named.combo, named.divisor, named.weight};
}

/// The combination route applies: the normalizing factor is a unit and the
/// shift width is below p.
bool closed_form_ok(const Target& target, Modulus p) {
    return !Residue(target.divisor, p).is_zero() && target.combo.width() < p.value();
}

const char* kOutsideNote = "p divides the normalizing factor; values come from the oracle, outside the closed-form formulas";

// ---------------------------------------------------------------------------
// Commands

Output cmd_table(const RunConfig& cfg) {
    Output o = start(cfg);
    const Modulus p = require_p(cfg);
    const SeqParams params = cfg.params();
    const Target target = resolve_target(cfg, SequenceId::Trinomial);

    std::vector<std::uint32_t> values;
    std::string method;
    bool outside = false;
    if (target.id == SequenceId::Trinomial) {
        const TTable t = t_table(params, p);
        values.assign(t.first_p().begin(), t.first_p().end());
        method = "recurrence";
    } else if (target.id == SequenceId::Motzkin) {
        const MTable mt = m_table(params, p);
        values.assign(mt.raw_values().begin(), mt.raw_values().end());
        method = to_string(mt.source());
        outside = mt.source() == MSource::Oracle;
    } else if (closed_form_ok(target, p)) {
        const Residue inv = mod_inverse(Residue(target.divisor, p));
        for (const Residue& r : combo_table(target.combo, t_table(params, p))) values.push_back((inv * r).value());
        method = "combination";
    } else if (target.weight) {
        for (const Residue& r : oracle_prefix_mod(params, p.value(), *target.weight, p)) values.push_back(r.value());
        method = "oracle";
        outside = true;
    } else {
        target.combo.require_width_below(p);
    }

    o.doc["p"] = p.value();
    o.doc["sequence"] = target.name();
    o.doc["method"] = method;
    o.doc["outside_closed_form"] = outside;
    o.doc["values"] = values;
    o.text.push_back(join(values, ","));
    if (outside) o.notes.push_back(kOutsideNote);
    o.csv_header = {"n", "value"};
    for (std::size_t n = 0; n < values.size(); ++n) o.csv_rows.push_back({std::to_string(n), std::to_string(values[n])});
    return o;
}

json canonical_json(const CanonicalForm& form, const DigitWord& digits) {
    std::vector<std::uint32_t> word(digits.digits().begin(), digits.digits().end());
    std::vector<std::uint32_t> q(form.q.digits().begin(), form.q.digits().end());
    return {{"digits", word},
            {"q", q},
            {"m", form.m},
            {"k", form.k},
            {"n0", form.n0},
            {"case", form.tail_case == TailCase::Plain ? "plain" : "tail"},
            {"m_padded", form.m_padded}};
}

Output cmd_eval(const RunConfig& cfg) {
    Output o = start(cfg);
    const Modulus p = require_p(cfg);
    if (!cfg.n) throw usage_error("eval needs --n");
    const std::uint64_t n = *cfg.n;
    const SeqParams params = cfg.params();
    const Target target = resolve_target(cfg, SequenceId::Trinomial);
    const TTable t = t_table(params, p);

    std::optional<Residue> value;
    std::string method;
    bool outside = false;
    auto via_combination = [&] {
        value = mod_inverse(Residue(target.divisor, p)) * combo_eval(target.combo, n, t);
        method = "combination";
    };
    auto via_oracle = [&] {
        value = oracle_seq_mod(params, n, *target.weight, p);
        method = "oracle";
        outside = true;
    };

    if (target.id == SequenceId::Trinomial) {
        value = t_eval(n, t);
        method = "digit-product";
    } else if (target.id == SequenceId::Motzkin) {
        const auto failed = motzkin_hypothesis_failure(t);
        if (!failed) {
            value = m_eval(n, t, m_table(params, p));
            method = "three-case";
        } else if (closed_form_ok(target, p)) {
            via_combination();
        } else if (n <= kOracleDefaultMaxN) {
            via_oracle();
        } else {
            throw hypothesis_error(*failed);
        }
    } else if (closed_form_ok(target, p)) {
        via_combination();
    } else if (target.weight) {
        if (n > kOracleDefaultMaxN)
            throw out_of_scope_error("p divides the normalizing factor and n exceeds the oracle cap of " +
                                     std::to_string(kOracleDefaultMaxN));
        via_oracle();
    } else {
        target.combo.require_width_below(p);
    }

    o.doc["p"] = p.value();
    o.doc["sequence"] = target.name();
    o.doc["n"] = n;
    o.doc["value"] = value->value();
    o.doc["method"] = method;
    o.doc["outside_closed_form"] = outside;
    o.doc["canonical"] = nullptr;
    if (target.combo.width() < p.value())
        o.doc["canonical"] = canonical_json(parse_tail(n, p, target.combo.width()), to_digits(n, p));

    std::ostringstream line;
    line << target.name() << "(" << n << ") mod " << p.value() << " = " << *value << "  [" << method << "]";
    o.text.push_back(line.str());
    o.text.push_back("digits: " + join(to_digits(n, p).digits(), " "));
    if (outside) o.notes.push_back(kOutsideNote);
    o.csv_header = {"p", "sequence", "n", "value", "method"};
    o.csv_rows.push_back({std::to_string(p.value()), target.name(), std::to_string(n), std::to_string(value->value()),
                          method});
    return o;
}

json report_json(const SymmetryReport& r) {
    json violations = json::array();
    for (const Violation& v : r.violations) violations.push_back({{"k", v.index}, {"lhs", v.lhs}, {"rhs", v.rhs}});
    return {{"p", r.modulus.value()},
            {"theorem", to_string(r.theorem)},
            {"k_first", r.k_first},
            {"k_last", r.k_last},
            {"violations", violations}};
}

std::vector<SymmetryReport> symmetry_reports(const SeqParams& params, Modulus p) {
    std::vector<SymmetryReport> out;
    out.push_back(check_t_symmetry(params, p));
    const bool disc_unit = !discriminant(params, p).is_zero();
    if (disc_unit) out.push_back(check_t_symmetry_inverted(params, p));
    if (p.value() > 3) out.push_back(check_m_symmetry(params, p));
    return out;
}

Output cmd_symmetry(const RunConfig& cfg) {
    Output o = start(cfg);
    const SeqParams params = cfg.params();
    std::vector<std::uint32_t> primes;
    if (cfg.max) {
        if (cfg.p) throw usage_error("symmetry takes either --p or --max, not both");
        primes = odd_primes(*cfg.max);
    } else {
        primes.push_back(require_p(cfg).value());
    }

    json results = json::array();
    json squares = json::array();
    std::size_t violations = 0;
    o.csv_header = {"p", "theorem", "k_first", "k_last", "violations"};
    for (std::uint32_t q : primes) {
        const Modulus p(q);
        for (const SymmetryReport& r : symmetry_reports(params, p)) {
            violations += r.violations.size();
            results.push_back(report_json(r));
            o.csv_rows.push_back({std::to_string(q), std::string(to_string(r.theorem)), std::to_string(r.k_first),
                                  std::to_string(r.k_last), std::to_string(r.violations.size())});
            if (!cfg.max || !r.holds()) {
                std::ostringstream line;
                line << to_string(r.theorem) << " p=" << q << " k=" << r.k_first << ".." << r.k_last << ": "
                     << (r.holds() ? "holds" : "VIOLATED");
                for (const Violation& v : r.violations) line << " [k=" << v.index << " " << v.lhs << "!=" << v.rhs << "]";
                o.text.push_back(line.str());
            }
        }
        if (!discriminant(params, p).is_zero()) {
            const bool ok = t_pm1_square_check(params, p);
            if (!ok) ++violations;
            squares.push_back({{"p", q}, {"holds", ok}});
            o.csv_rows.push_back({std::to_string(q), "t-pm1-square", std::to_string(q - 1), std::to_string(q - 1),
                                  ok ? "0" : "1"});
            if (!cfg.max || !ok) o.text.push_back("t-pm1-square p=" + std::to_string(q) + ": " + (ok ? "holds" : "VIOLATED"));
        }
    }
    if (cfg.max)
        o.text.push_back("checked " + std::to_string(primes.size()) + " primes, " + std::to_string(violations) +
                         " violations");
    o.doc["results"] = results;
    o.doc["t_pm1_square"] = squares;
    o.doc["violations"] = violations;
    o.doc["holds"] = violations == 0;
    if (violations > 0) o.code = kHardFailure;
    return o;
}

DensityReport density_for(const RunConfig& cfg, const Target& target, Modulus p) {
    const SeqParams params = cfg.params();
    const bool unit = params.a == 1 && params.b == 1;
    switch (target.id) {
        case SequenceId::Motzkin:
            return density_zero_motzkin(params, p);
        case SequenceId::A005717:
        case SequenceId::A005043:
        case SequenceId::A005773:
            if (unit) return density_zero_named(target.id, p);
            break;
        default:
            break;
    }
    if (!closed_form_ok(target, p)) {
        target.combo.require_width_below(p);
        throw out_of_scope_error("p divides the normalizing factor " + std::to_string(target.divisor) +
                                 "; no closed-form density (use count for enumeration)");
    }
    return density_zero_generic(target.combo, params, p, target.name());
}

Output cmd_density(const RunConfig& cfg) {
    Output o = start(cfg);
    const Modulus p = require_p(cfg);
    const Target target = resolve_target(cfg, SequenceId::Motzkin);
    const DensityReport r = density_for(cfg, target, p);

    o.doc["p"] = p.value();
    o.doc["sequence"] = r.sequence_id;
    o.doc["d0"] = ratio_json(r.d0);
    o.doc["cases"] = {{"plain", ratio_json(r.cases.plain)},
                      {"even_tail", ratio_json(r.cases.even_tail)},
                      {"odd_tail", ratio_json(r.cases.odd_tail)}};
    o.doc["counts"] = {{"plain", r.plain_count}, {"even", r.even_count}, {"odd", r.odd_count}};
    o.doc["degenerate"] = r.degenerate ? json(std::string(to_string(*r.degenerate))) : json(nullptr);
    o.doc["lower_bound"] = ratio_json(r.lower_bound);

    o.text.push_back(r.sequence_id + " p=" + std::to_string(p.value()) + " a=" + std::to_string(cfg.a) +
                     " b=" + std::to_string(cfg.b));
    o.text.push_back("D0 = " + show(r.d0));
    if (r.degenerate) o.text.push_back("degenerate: " + std::string(to_string(*r.degenerate)));
    o.text.push_back("  plain      " + show(r.cases.plain) + "  [" + std::to_string(r.plain_count) + "]");
    o.text.push_back("  even tail  " + show(r.cases.even_tail) + "  [" + std::to_string(r.even_count) + "]");
    o.text.push_back("  odd tail   " + show(r.cases.odd_tail) + "  [" + std::to_string(r.odd_count) + "]");
    if (r.lower_bound) o.text.push_back("lower bound " + show(*r.lower_bound));

    o.csv_header = {"quantity", "rational", "decimal", "count"};
    auto row = [&](const std::string& name, const ExactRatio& v, const std::string& count) {
        o.csv_rows.push_back({name, v.to_string(), v.decimal(), count});
    };
    row("d0", r.d0, "");
    row("plain", r.cases.plain, std::to_string(r.plain_count));
    row("even_tail", r.cases.even_tail, std::to_string(r.even_count));
    row("odd_tail", r.cases.odd_tail, std::to_string(r.odd_count));
    if (r.lower_bound) row("lower_bound", *r.lower_bound, "");
    return o;
}

Output cmd_count(const RunConfig& cfg) {
    Output o = start(cfg);
    const Modulus p = require_p(cfg);
    if (!cfg.digits) throw usage_error("count needs --digits");
    const std::uint32_t N = *cfg.digits;
    const SeqParams params = cfg.params();
    const Target target = resolve_target(cfg, SequenceId::Motzkin);
    const BigInt total = boost::multiprecision::pow(BigInt(p.value()), N);

    std::optional<BigInt> exact;
    std::optional<BigInt> enumerated;
    std::string method;
    bool outside = false;
    if (closed_form_ok(target, p)) {
        method = t_table(params, p).has_zero() ? "automaton" : "closed-form";
        exact = count_zeros_exact(target.combo, params, p, N);
        if (!cfg.exact_only) enumerated = count_zeros_enum(target.combo, params, p, N, cfg.budget, cfg.jobs);
    } else if (target.weight) {
        const std::uint64_t span = detail::checked_span(p, N, cfg.budget);
        std::uint64_t zeros = 0;
        for (const Residue& r : oracle_prefix_mod(params, span, *target.weight, p))
            if (r.is_zero()) ++zeros;
        enumerated = zeros;
        method = "oracle";
        outside = true;
    } else {
        target.combo.require_width_below(p);
    }

    const std::optional<bool> agree =
        exact && enumerated ? std::optional<bool>(*exact == *enumerated) : std::nullopt;
    if (agree == false) o.code = kHardFailure;
    const BigInt& zeros = exact ? *exact : *enumerated;
    const ExactRatio fraction(zeros, total);

    auto big = [](const std::optional<BigInt>& v) { return v ? json(v->str()) : json(nullptr); };
    o.doc["p"] = p.value();
    o.doc["sequence"] = target.name();
    o.doc["digits"] = N;
    o.doc["total"] = total.str();
    o.doc["exact"] = big(exact);
    o.doc["enumerated"] = big(enumerated);
    o.doc["agree"] = agree ? json(*agree) : json(nullptr);
    o.doc["fraction"] = ratio_json(fraction);
    o.doc["method"] = method;
    o.doc["outside_closed_form"] = outside;

    o.text.push_back(target.name() + " zeros among n < " + std::to_string(p.value()) + "^" + std::to_string(N) +
                     " = " + total.str());
    if (exact) o.text.push_back("exact:      " + exact->str() + "  [" + method + "]");
    if (enumerated) o.text.push_back("enumerated: " + enumerated->str() + (outside ? "  [oracle]" : ""));
    if (agree == false) o.text.push_back("MISMATCH between exact count and enumeration");
    o.text.push_back("fraction:   " + show(fraction));
    if (outside) o.notes.push_back(kOutsideNote);

    o.csv_header = {"p", "sequence", "digits", "total", "exact", "enumerated", "fraction"};
    o.csv_rows.push_back({std::to_string(p.value()), target.name(), std::to_string(N), total.str(),
                          exact ? exact->str() : "", enumerated ? enumerated->str() : "", fraction.to_string()});
    return o;
}

Output cmd_values(const RunConfig& cfg) {
    Output o = start(cfg);
    const Modulus p = require_p(cfg);
    if (cfg.seq && *cfg.seq != "motzkin") throw usage_error("values is defined for --seq motzkin only");
    const SeqParams params = cfg.params();
    const DensityReport r = value_densities(params, p);
    std::optional<std::map<std::uint32_t, std::uint64_t>> histogram;
    if (cfg.digits) histogram = empirical_value_counts(params, p, *cfg.digits, cfg.budget);

    const bool generates = r.generation == GenerationStatus::Generates;
    if (!generates || !r.transitions_regular.value_or(false)) o.code = kHardFailure;

    o.doc["p"] = p.value();
    o.doc["d0"] = ratio_json(r.d0);
    o.doc["generation"] = std::string(to_string(*r.generation));
    o.doc["subgroup_order"] = *r.subgroup_order;
    o.doc["nonzero_density"] = ratio_json(r.nonzero_density);
    o.doc["transitions_regular"] = *r.transitions_regular;
    o.doc["histogram"] = nullptr;
    if (histogram) {
        json h = json::object();
        for (const auto& [v, c] : *histogram) h[std::to_string(v)] = c;
        o.doc["histogram"] = {{"digits", *cfg.digits}, {"counts", h}};
    }

    o.text.push_back("motzkin p=" + std::to_string(p.value()) + " a=" + std::to_string(cfg.a) +
                     " b=" + std::to_string(cfg.b));
    o.text.push_back("D0 = " + show(r.d0));
    o.text.push_back("T_0..T_{p-1} " + std::string(to_string(*r.generation)) + " F_p^x (subgroup order " +
                     std::to_string(*r.subgroup_order) + " of " + std::to_string(p.value() - 1) + ")");
    if (r.nonzero_density)
        o.text.push_back("each nonzero residue: " + show(*r.nonzero_density));
    else
        o.text.push_back("nonzero densities not asserted");
    o.text.push_back(std::string("value transitions regular: ") + (*r.transitions_regular ? "yes" : "no"));
    if (histogram) {
        o.text.push_back("empirical counts over n < " + std::to_string(p.value()) + "^" + std::to_string(*cfg.digits) +
                         ":");
        for (const auto& [v, c] : *histogram) o.text.push_back("  " + std::to_string(v) + ": " + std::to_string(c));
    }

    o.csv_header = {"residue", "predicted", "empirical"};
    for (std::uint32_t v = 0; v < p.value(); ++v) {
        std::string predicted;
        if (v == 0)
            predicted = r.d0.to_string();
        else if (r.nonzero_density)
            predicted = r.nonzero_density->to_string();
        std::string empirical;
        if (histogram) {
            auto it = histogram->find(v);
            empirical = std::to_string(it == histogram->end() ? 0 : it->second);
        }
        o.csv_rows.push_back({std::to_string(v), predicted, empirical});
    }
    return o;
}

Output cmd_scan(const RunConfig& cfg) {
    Output o = start(cfg);
    if (!cfg.max) throw usage_error("scan needs --max");
    const std::uint64_t limit = *cfg.max;
    if ((cfg.scan_test == "a113305" || cfg.scan_test == "equality") && limit < 5)
        throw usage_error("scan " + cfg.scan_test + " needs --max >= 5");

    SweepOptions options;
    options.jobs = cfg.jobs;
    if (cfg.checkpoint) options.checkpoint = *cfg.checkpoint;

    std::vector<SweepResult> results;
    if (cfg.scan_test == "a113305")
        results = a113305_sweep(limit, options, cfg.validate);
    else if (cfg.scan_test == "conjecture")
        results = conjecture_sweep(limit, cfg.params(), options);
    else if (cfg.scan_test == "equality")
        results = equality_sweep(limit, options);
    else
        results = pm2_sweep(limit, options);

    json records = json::array();
    std::map<std::string, std::uint64_t> tally;
    std::uint64_t failures = 0;
    o.csv_header = {"p", "test", "verdict", "payload"};
    for (const SweepResult& r : results) {
        for (const Verdict& v : r.verdicts) {
            records.push_back(to_record(r.prime, v));
            ++tally[v.outcome];
            o.csv_rows.push_back({std::to_string(r.prime), v.test, v.outcome, v.payload.dump()});
            if (v.hard_failure) {
                ++failures;
                o.text.push_back("FAILURE p=" + std::to_string(r.prime) + " " + v.outcome + " " + v.payload.dump());
            }
        }
    }

    json summary = {{"primes", results.size()}, {"outcomes", tally}};
    o.text.push_back("scan " + cfg.scan_test + " up to " + std::to_string(limit) + ": " +
                     std::to_string(results.size()) + " primes, " + std::to_string(failures) + " failures");
    for (const auto& [outcome, count] : tally) o.text.push_back("  " + outcome + ": " + std::to_string(count));
    if (cfg.scan_test == "a113305" && !results.empty()) {
        const std::uint64_t members = tally["member"];
        const ExactRatio fraction(BigInt(members), BigInt(results.size()));
        summary["members"] = members;
        summary["fraction"] = ratio_json(fraction);
        std::ostringstream heuristic;
        heuristic << std::fixed << std::setprecision(6) << std::exp(-0.5);
        summary["heuristic"] = heuristic.str();
        o.text.push_back("member fraction " + show(fraction) + ", heuristic e^-1/2 = " + heuristic.str());
        o.csv_rows.push_back({"summary", cfg.scan_test, fraction.to_string(), summary.dump()});
    } else {
        o.csv_rows.push_back({"summary", cfg.scan_test, std::to_string(failures) + " failures", summary.dump()});
    }

    o.doc["test"] = cfg.scan_test;
    o.doc["max"] = limit;
    o.doc["results"] = records;
    o.doc["summary"] = summary;
    o.doc["failures"] = failures;
    if (failures > 0) o.code = kHardFailure;
    return o;
}

Output cmd_oracle(const RunConfig& cfg) {
    Output o = start(cfg);
    if (!cfg.n) throw usage_error("oracle needs --n (number of terms)");
    const Target target = resolve_target(cfg, SequenceId::Trinomial);
    if (!target.weight) throw usage_error("the oracle needs a named sequence, not --seq custom");
    const SeqParams params = cfg.params();

    std::vector<std::string> values;
    if (cfg.p) {
        const Modulus p(*cfg.p);
        for (const Residue& r : oracle_prefix_mod(params, *cfg.n, *target.weight, p))
            values.push_back(std::to_string(r.value()));
        o.doc["p"] = p.value();
    } else {
        for (const BigInt& v : oracle_prefix(params, *cfg.n, *target.weight)) values.push_back(v.str());
        o.doc["p"] = nullptr;
    }
    o.doc["sequence"] = target.name();
    o.doc["count"] = *cfg.n;
    o.doc["values"] = values;
    o.text.push_back(join(values, ","));
    o.csv_header = {"n", "value"};
    for (std::size_t n = 0; n < values.size(); ++n) o.csv_rows.push_back({std::to_string(n), values[n]});
    return o;
}

void emit(const Output& o, const std::string& format, std::ostream& out, std::ostream& err) {
    if (format == "json") {
        out << o.doc.dump(2) << '\n';
    } else if (format == "csv") {
        std::vector<std::string> header;
        for (const auto& h : o.csv_header) header.push_back(csv_field(h));
        out << join(header, ",") << '\n';
        for (const auto& row : o.csv_rows) {
            std::vector<std::string> fields;
            for (const auto& f : row) fields.push_back(csv_field(f));
            out << join(fields, ",") << '\n';
        }
    } else {
        for (const auto& line : o.text) out << line << '\n';
        for (const auto& note : o.notes) err << "note: " << note << '\n';
    }
}

// ---------------------------------------------------------------------------
// Schema

using Checker = bool (*)(const json&);

bool is_ratio(const json& j) {
    return j.is_object() && j.contains("rational") && j["rational"].is_string() && j.contains("decimal") &&
           j["decimal"].is_string() && j["rational"].get<std::string>().find('/') != std::string::npos;
}
bool is_ratio_or_null(const json& j) { return j.is_null() || is_ratio(j); }
bool is_uint(const json& j) { return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0); }
bool is_uint_or_null(const json& j) { return j.is_null() || is_uint(j); }
bool is_string(const json& j) { return j.is_string(); }
bool is_string_or_null(const json& j) { return j.is_null() || j.is_string(); }
bool is_bool(const json& j) { return j.is_boolean(); }
bool is_bool_or_null(const json& j) { return j.is_null() || j.is_boolean(); }
bool is_array(const json& j) { return j.is_array(); }
bool is_object(const json& j) { return j.is_object(); }
bool is_object_or_null(const json& j) { return j.is_null() || j.is_object(); }
bool is_cases(const json& j) {
    return j.is_object() && j.contains("plain") && is_ratio(j["plain"]) && j.contains("even_tail") &&
           is_ratio(j["even_tail"]) && j.contains("odd_tail") && is_ratio(j["odd_tail"]);
}

const std::map<std::string, std::vector<std::pair<std::string, Checker>>>& schemas() {
    static const std::map<std::string, std::vector<std::pair<std::string, Checker>>> s = {
        {"table",
         {{"p", is_uint}, {"sequence", is_string}, {"method", is_string}, {"outside_closed_form", is_bool},
          {"values", is_array}}},
        {"eval",
         {{"p", is_uint}, {"sequence", is_string}, {"n", is_uint}, {"value", is_uint}, {"method", is_string},
          {"outside_closed_form", is_bool}, {"canonical", is_object_or_null}}},
        {"symmetry", {{"results", is_array}, {"t_pm1_square", is_array}, {"violations", is_uint}, {"holds", is_bool}}},
        {"density",
         {{"p", is_uint}, {"sequence", is_string}, {"d0", is_ratio}, {"cases", is_cases}, {"counts", is_object},
          {"degenerate", is_string_or_null}, {"lower_bound", is_ratio_or_null}}},
        {"count",
         {{"p", is_uint}, {"sequence", is_string}, {"digits", is_uint}, {"total", is_string},
          {"exact", is_string_or_null}, {"enumerated", is_string_or_null}, {"agree", is_bool_or_null},
          {"fraction", is_ratio}, {"method", is_string}, {"outside_closed_form", is_bool}}},
        {"values",
         {{"p", is_uint}, {"d0", is_ratio}, {"generation", is_string}, {"subgroup_order", is_uint},
          {"nonzero_density", is_ratio_or_null}, {"transitions_regular", is_bool}, {"histogram", is_object_or_null}}},
        {"scan",
         {{"test", is_string}, {"max", is_uint}, {"results", is_array}, {"summary", is_object}, {"failures", is_uint}}},
        {"oracle", {{"p", is_uint_or_null}, {"sequence", is_string}, {"count", is_uint}, {"values", is_array}}},
    };
    return s;
}

}  // namespace

std::string schema_problem(const json& doc) {
    if (!doc.is_object()) return "document is not an object";
    if (!doc.contains("schema_version") || doc["schema_version"] != kSchemaVersion) return "bad schema_version";
    if (!doc.contains("command") || !doc["command"].is_string()) return "missing command";
    if (!doc.contains("params") || !doc["params"].is_object() || !doc["params"].contains("a") ||
        !doc["params"].contains("b"))
        return "missing params";
    const auto it = schemas().find(doc["command"].get<std::string>());
    if (it == schemas().end()) return "unknown command " + doc["command"].dump();
    for (const auto& [key, check] : it->second) {
        if (!doc.contains(key)) return "missing field " + key;
        if (!check(doc[key])) return "field " + key + " has the wrong shape";
    }
    if (doc["command"] == "scan") {
        for (const auto& rec : doc["results"]) {
            if (!rec.contains("p") || !rec.contains("test") || !rec.contains("verdict") || !rec.contains("payload"))
                return "scan record lacks p/test/verdict/payload";
        }
    }
    return {};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Generalized Motzkin numbers and central trinomial coefficients modulo primes", "motzkin-cli"};
    app.require_subcommand(1, 1);

    const std::vector<std::string> seq_names{"trinomial", "motzkin", "a005717", "a005043", "a005773", "custom"};
    app.add_option("--p", cfg.p, "prime modulus");
    app.add_option("--a", cfg.a, "weight of the up and down steps")->capture_default_str();
    app.add_option("--b", cfg.b, "weight of the level step")->capture_default_str();
    app.add_option("--seq", cfg.seq, "sequence")->check(CLI::IsMember(seq_names));
    app.add_option("--alpha", cfg.alpha, "coefficients a0,a1,... of sum a_i T_{n+i} for --seq custom");
    app.add_option("--n", cfg.n, "index (eval) or number of terms (oracle)");
    app.add_option("--digits", cfg.digits, "digit length N; counts run over n < p^N");
    app.add_option("--max", cfg.max, "prime bound X");
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
    app.add_option("--budget", cfg.budget, "largest enumeration allowed")->capture_default_str();
    app.add_option("--checkpoint", cfg.checkpoint, "line-delimited JSON results file for resumable scans");
    app.add_flag("--exact-only", cfg.exact_only, "count: skip the enumeration cross-check");
    app.add_flag("--validate", cfg.validate, "scan a113305: also check every prime against the full table");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"table", "first p terms mod p"},
        {"eval", "value at index --n from its base-p digits"},
        {"symmetry", "reflection symmetries of T and M at --p or for all odd primes up to --max"},
        {"density", "exact density of 0"},
        {"count", "exact and enumerated zero counts over n < p^N"},
        {"values", "generation status and densities of nonzero residues of M"},
        {"scan", "sweep over primes"},
        {"oracle", "first --n terms by Laurent-polynomial expansion"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->fallthrough();
        subs[name] = sub;
    }
    subs["scan"]
        ->add_option("test", cfg.scan_test, "a113305 | conjecture | equality | pm2")
        ->required()
        ->check(CLI::IsMember({"a113305", "conjecture", "equality", "pm2"}));

    std::vector<std::string> storage{"motzkin-cli"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : storage) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return e.get_exit_code() == 0 ? kSuccess : kUsage;
    }
    for (const auto& [name, sub] : subs)
        if (sub->parsed()) cfg.command = name;

    try {
        Output o;
        if (cfg.command == "table") o = cmd_table(cfg);
        else if (cfg.command == "eval") o = cmd_eval(cfg);
        else if (cfg.command == "symmetry") o = cmd_symmetry(cfg);
        else if (cfg.command == "density") o = cmd_density(cfg);
        else if (cfg.command == "count") o = cmd_count(cfg);
        else if (cfg.command == "values") o = cmd_values(cfg);
        else if (cfg.command == "scan") o = cmd_scan(cfg);
        else o = cmd_oracle(cfg);
        emit(o, cfg.format, out, err);
        return o.code;
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << "\n\n" << app.help();
    } catch (const budget_error& e) {
        err << "budget exceeded: " << e.what() << "\n";
    } catch (const hypothesis_error& e) {
        err << "degenerate input: " << e.what() << "\n";
    } catch (const out_of_scope_error& e) {
        err << "out of scope: " << e.what() << "\n";
    } catch (const not_prime_error& e) {
        err << "invalid modulus: " << e.what() << "\n";
    } catch (const unsupported_width_error& e) {
        err << "unsupported combination: " << e.what() << "\n";
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
    }
    return kUsage;
}

}  // namespace motzkin::cli

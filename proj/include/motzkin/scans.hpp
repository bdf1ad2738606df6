#pragma once

// Sweeps over primes: A113305 membership, the generation conjecture,
// equal Riordan/A005773 zero densities, and the M_{p-2} criterion.
//
// Sweeps run on a small worker pool, aggregate in prime order and append
// finished chunks to a line-delimited JSON checkpoint
//   {"p": 13, "test": "pm2", "verdict": "agree", "payload": {...}}
// so an interrupted sweep resumes where it stopped.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "motzkin/core_arith.hpp"
#include "motzkin/density.hpp"
#include "motzkin/sequence_tables.hpp"
#include "motzkin/symmetry.hpp"

namespace motzkin {

/// Sieve of Eratosthenes.
inline std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

// ---------------------------------------------------------------------------
// A113305: primes dividing no central trinomial coefficient

/// p divides no T_n iff it divides none of T_0 .. T_{(p-1)/2}. Runs the
/// recurrence on U_n = n! T_n,
///   U_n = (2n-1) U_{n-1} + 3 (n-1)^2 U_{n-2},
/// which needs no inverses and vanishes exactly where T_n does for n < p.
inline bool a113305_test(Modulus p) {
    const std::uint32_t m = p;
    if (m == 2) throw out_of_scope_error("the half-table shortcut requires p > 2");
    // p | b^2 - 4a^2 = -3 forces T_{p-1} = 0, which the half table cannot see.
    if (m == 3) return false;
    std::uint64_t prev = 1, cur = 1;  // U_0, U_1
    for (std::uint64_t n = 2; n <= (m - 1) / 2; ++n) {
        const std::uint64_t a = (2 * n - 1) % m * cur % m;
        const std::uint64_t b = 3 * ((n - 1) * (n - 1) % m) % m * prev % m;
        prev = cur;
        cur = (a + b) % m;
        if (cur == 0) return false;
    }
    return true;
}

/// Same question answered from the full table T_0 .. T_{p-1}.
inline bool a113305_full(Modulus p) { return !t_table(SeqParams{1, 1}, p).has_zero(); }

struct A113305Density {
    ExactRatio fraction;
    std::uint64_t members = 0;
    std::uint64_t primes = 0;  // odd primes <= X
    /// Heuristic limit e^{-1/2}, reported alongside but never asserted.
    double heuristic = std::exp(-0.5);
};

inline A113305Density a113305_density(std::uint64_t limit, unsigned jobs = 1) {
    if (limit < 5) throw error("a113305_density needs X >= 5");
    std::vector<std::uint32_t> primes = primes_up_to(limit);
    primes.erase(primes.begin());  // drop 2
    std::atomic<std::uint64_t> members{0};
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < primes.size();)
            if (a113305_test(Modulus(primes[i]))) members.fetch_add(1);
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < std::max(1u, jobs); ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    A113305Density d;
    d.members = members.load();
    d.primes = primes.size();
    d.fraction = ExactRatio(BigInt(d.members), BigInt(d.primes));
    return d;
}

// ---------------------------------------------------------------------------
// Generation conjecture

enum class ConjectureOutcome { DegenerateZero, Generates, FailsToGenerate };

inline std::string_view to_string(ConjectureOutcome c) noexcept {
    switch (c) {
        case ConjectureOutcome::DegenerateZero: return "degenerate-zero";
        case ConjectureOutcome::Generates: return "generates";
        case ConjectureOutcome::FailsToGenerate: return "fails-to-generate";
    }
    return "unknown";
}

/// Whether {T_j mod p : j < p} generates F_p^x. A zero among them takes
/// precedence and yields DegenerateZero.
inline ConjectureOutcome mult_conj_check(const SeqParams& params, Modulus p) {
    const TTable t = t_table(params, p);
    if (t.has_zero()) return ConjectureOutcome::DegenerateZero;
    return generates_unit_group(t.first_p(), p) ? ConjectureOutcome::Generates : ConjectureOutcome::FailsToGenerate;
}

// ---------------------------------------------------------------------------
// Sweep machinery

struct Verdict {
    std::string test;
    std::string outcome;
    bool hard_failure = false;
    nlohmann::json payload = nlohmann::json::object();
};

struct SweepResult {
    std::uint32_t prime = 0;
    std::vector<Verdict> verdicts;

    bool failed() const {
        return std::any_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.hard_failure; });
    }
};

/// Outcomes that indicate a bug or a counterexample.
inline bool is_hard_failure_outcome(std::string_view outcome) {
    return outcome == "shortcut-mismatch" || outcome == "fails-to-generate" || outcome == "unequal" ||
           outcome == "disagree";
}

inline nlohmann::json to_record(std::uint32_t p, const Verdict& v) {
    return {{"p", p}, {"test", v.test}, {"verdict", v.outcome}, {"payload", v.payload}};
}

struct SweepOptions {
    unsigned jobs = 1;
    std::size_t checkpoint_every = 256;
    std::optional<std::filesystem::path> checkpoint;
};

namespace detail {

/// Records already present in a checkpoint for the given test, keyed by p.
inline std::map<std::uint32_t, SweepResult> load_checkpoint(const std::filesystem::path& path, std::string_view test) {
    std::map<std::uint32_t, SweepResult> done;
    std::ifstream in(path);
    if (!in) return done;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error&) {
            continue;  // a torn final line from an interrupted write
        }
        if (!rec.contains("test") || rec["test"] != test) continue;
        const auto p = rec.at("p").get<std::uint32_t>();
        Verdict v{rec.at("test").get<std::string>(), rec.at("verdict").get<std::string>(), false,
                  rec.value("payload", nlohmann::json::object())};
        v.hard_failure = is_hard_failure_outcome(v.outcome);
        auto& slot = done[p];
        slot.prime = p;
        slot.verdicts.push_back(std::move(v));
    }
    return done;
}

}  // namespace detail

/// Applies `per_prime` to every prime, resuming from and appending to the
/// checkpoint when one is configured. Results come back sorted by p and do
/// not depend on the worker count.
inline std::vector<SweepResult> run_sweep(std::span<const std::uint32_t> primes, std::string_view test,
                                          const std::function<SweepResult(Modulus)>& per_prime,
                                          const SweepOptions& options = {}) {
    std::map<std::uint32_t, SweepResult> done;
    if (options.checkpoint) done = detail::load_checkpoint(*options.checkpoint, test);

    std::vector<std::uint32_t> todo;
    for (std::uint32_t p : primes)
        if (!done.contains(p)) todo.push_back(p);
    std::sort(todo.begin(), todo.end());

    std::ofstream out;
    if (options.checkpoint) {
        // Make sure a torn final line cannot merge with the next record.
        bool needs_newline = false;
        if (std::ifstream probe(*options.checkpoint, std::ios::binary); probe) {
            probe.seekg(0, std::ios::end);
            if (probe.tellg() > 0) {
                probe.seekg(-1, std::ios::end);
                needs_newline = probe.get() != '\n';
            }
        }
        out.open(*options.checkpoint, std::ios::app);
        if (!out) throw error("cannot open checkpoint file " + options.checkpoint->string());
        if (needs_newline) out << '\n';
    }

    const std::size_t chunk = std::max<std::size_t>(1, options.checkpoint_every);
    const unsigned jobs = std::max(1u, options.jobs);
    for (std::size_t start = 0; start < todo.size(); start += chunk) {
        const std::size_t stop = std::min(todo.size(), start + chunk);
        std::vector<SweepResult> batch(stop - start);
        std::atomic<std::size_t> next{start};
        auto work = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < stop;) batch[i - start] = per_prime(Modulus(todo[i]));
        };
        std::vector<std::thread> pool;
        for (unsigned w = 1; w < jobs; ++w) pool.emplace_back(work);
        work();
        for (auto& t : pool) t.join();

        for (SweepResult& r : batch) {
            if (out.is_open())
                for (const Verdict& v : r.verdicts) out << to_record(r.prime, v).dump() << '\n';
            done[r.prime] = std::move(r);
        }
        if (out.is_open()) out.flush();
    }

    std::vector<SweepResult> results;
    std::set<std::uint32_t> wanted(primes.begin(), primes.end());
    for (auto& [p, r] : done)
        if (wanted.contains(p)) results.push_back(std::move(r));
    return results;
}

inline Verdict make_verdict(std::string test, std::string outcome, nlohmann::json payload = nlohmann::json::object()) {
    Verdict v{std::move(test), std::move(outcome), false, std::move(payload)};
    v.hard_failure = is_hard_failure_outcome(v.outcome);
    return v;
}

/// Odd primes in [lo, hi].
inline std::vector<std::uint32_t> odd_primes(std::uint64_t hi, std::uint64_t lo = 3) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t p : primes_up_to(hi))
        if (p >= lo && p != 2) out.push_back(p);
    return out;
}

/// Membership via the half table, cross-checked against the full table
/// when `validate` is set.
inline std::vector<SweepResult> a113305_sweep(std::uint64_t limit, const SweepOptions& options = {},
                                              bool validate = false) {
    const auto primes = odd_primes(limit);
    return run_sweep(primes, "a113305", [validate](Modulus p) {
        const bool member = a113305_test(p);
        nlohmann::json payload{{"member", member}};
        std::string outcome = member ? "member" : "non-member";
        if (validate) {
            const bool full = a113305_full(p);
            payload["full_table_member"] = full;
            if (full != member) outcome = "shortcut-mismatch";
        }
        return SweepResult{p.value(), {make_verdict("a113305", outcome, std::move(payload))}};
    }, options);
}

inline std::vector<SweepResult> conjecture_sweep(std::uint64_t limit, const SeqParams& params,
                                                 const SweepOptions& options = {}) {
    const auto primes = primes_up_to(limit);
    return run_sweep(primes, "conjecture", [params](Modulus p) {
        const ConjectureOutcome c = mult_conj_check(params, p);
        nlohmann::json payload{{"a", params.a}, {"b", params.b}};
        if (c != ConjectureOutcome::DegenerateZero) {
            const TTable t = t_table(params, p);
            payload["subgroup_order"] = generated_subgroup_order(t.first_p(), p);
            payload["group_order"] = p.value() - 1;
        }
        return SweepResult{p.value(), {make_verdict("conjecture", std::string(to_string(c)), std::move(payload))}};
    }, options);
}

/// Zero densities of A005043 and A005773 must coincide at every odd prime.
inline std::vector<SweepResult> equality_sweep(std::uint64_t limit, const SweepOptions& options = {}) {
    if (limit < 5) throw error("equality_sweep needs X >= 5");
    const auto primes = odd_primes(limit);
    return run_sweep(primes, "equality", [](Modulus p) {
        const DensityReport riordan = density_zero_named(SequenceId::A005043, p);
        const DensityReport other = density_zero_named(SequenceId::A005773, p);
        nlohmann::json payload{{"a005043", riordan.d0.to_string()}, {"a005773", other.d0.to_string()}};
        return SweepResult{p.value(),
                           {make_verdict("equality", riordan.d0 == other.d0 ? "equal" : "unequal", std::move(payload))}};
    }, options);
}

/// p | M_{p-2} iff p = 1 mod 3.
inline std::vector<SweepResult> pm2_sweep(std::uint64_t limit, const SweepOptions& options = {}) {
    const auto primes = primes_up_to(limit);
    return run_sweep(primes, "pm2", [](Modulus p) {
        const Pm2Criterion c = motzkin_pm2_criterion(p);
        nlohmann::json payload{{"divides", c.divides}, {"one_mod_three", c.one_mod_three}};
        return SweepResult{p.value(), {make_verdict("pm2", c.agrees() ? "agree" : "disagree", std::move(payload))}};
    }, options);
}

}  // namespace motzkin

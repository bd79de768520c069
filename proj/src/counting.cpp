#include "qnt/counting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <string>

#include "qnt/errors.hpp"

namespace qnt::counting {

bool is_power_of_two(std::uint64_t v) { return v >= 1 && (v & (v - 1)) == 0; }

double sinc_weight(double x, std::uint64_t P) {
    const double p = static_cast<double>(P);
    if (std::remainder(x, p) == 0.0) {
        return 1.0;
    }
    return std::sin(std::numbers::pi * x) /
           (p * std::sin(std::numbers::pi * x / p));
}

double peak_position(std::uint64_t t, std::uint64_t domain_dim, std::uint64_t P) {
    const double theta = std::asin(std::sqrt(static_cast<double>(t) /
                                             static_cast<double>(domain_dim)));
    return static_cast<double>(P) * theta / std::numbers::pi;
}

CountEstimate estimate_from_outcome(std::uint64_t outcome, std::uint64_t P,
                                    std::uint64_t domain_dim) {
    if (outcome >= P) {
        throw ConfigError("estimate_from_outcome: outcome must be below P");
    }
    CountEstimate e;
    e.outcome = outcome;
    e.f = static_cast<double>(std::min(outcome, P - outcome));
    e.theta = std::numbers::pi * e.f / static_cast<double>(P);
    const double n = static_cast<double>(domain_dim);
    const double s = std::sin(e.theta);
    e.t = n * s * s;
    e.error_bound = std::numbers::pi * n / static_cast<double>(P) *
                    (std::numbers::pi / static_cast<double>(P) +
                     2.0 * std::sqrt(e.t / n));
    return e;
}

CountEstimate majority_estimate(std::span<const CountEstimate> estimates) {
    if (estimates.empty()) {
        throw ConfigError("majority_estimate: empty estimate list");
    }
    std::map<long long, std::uint64_t> votes;  // rounded t -> multiplicity
    for (const CountEstimate& e : estimates) {
        ++votes[std::llround(e.t)];
    }
    long long winner = votes.begin()->first;
    std::uint64_t best = votes.begin()->second;
    for (const auto& [value, count] : votes) {
        if (count > best) {  // ties stay with the smaller rounded value
            winner = value;
            best = count;
        }
    }
    const CountEstimate* closest = &estimates[0];
    double dist = std::abs(closest->t - static_cast<double>(winner));
    for (const CountEstimate& e : estimates) {
        const double d = std::abs(e.t - static_cast<double>(winner));
        if (d < dist) {
            closest = &e;
            dist = d;
        }
    }
    return *closest;
}

void CountSetup::validate() const {
    if (domain_dim < 2) {
        throw ConfigError("count: domain dimension must be >= 2");
    }
    if (!is_power_of_two(ancilla_dim) || ancilla_dim < 2) {
        throw ConfigError("count: ancilla dimension must be a power of two >= 2");
    }
    if (repetitions < 1) {
        throw ConfigError("count: at least one ancilla register required");
    }
    if (!marked) {
        throw ConfigError("count: marked predicate required");
    }
}

namespace {

std::string ancilla_name(std::uint64_t i) { return "m" + std::to_string(i + 1); }

std::vector<std::string> ancilla_names(std::uint64_t repetitions) {
    std::vector<std::string> names;
    names.reserve(repetitions);
    for (std::uint64_t i = 0; i < repetitions; ++i) {
        names.push_back(ancilla_name(i));
    }
    return names;
}

}  // namespace

sv::QState make_count_state(const CountSetup& setup) {
    setup.validate();
    std::vector<sv::Register> regs;
    for (std::uint64_t i = 0; i < setup.repetitions; ++i) {
        regs.push_back({ancilla_name(i), setup.ancilla_dim});
    }
    regs.push_back({"a", setup.domain_dim});
    sv::QState state = sv::QState::zero(sv::RegisterLayout(std::move(regs)));
    for (std::uint64_t i = 0; i < setup.repetitions; ++i) {
        sv::apply_fourier(state.view(), ancilla_name(i), setup.ancilla_dim,
                          sv::Direction::Forward);
    }
    sv::apply_fourier(state.view(), "a", setup.domain_dim, sv::Direction::Forward);
    return state;
}

void count_transform(sv::StateView s, const CountSetup& setup) {
    setup.validate();
    const std::vector<std::string> controls = ancilla_names(setup.repetitions);
    const auto marker = [&setup](std::uint64_t a, std::span<const std::uint64_t>) {
        return setup.marked(a);
    };
    sv::apply_controlled_grover_power(s, controls, "a",
                                      sv::EffectiveDim::fixed(setup.domain_dim),
                                      marker);
    for (const std::string& name : controls) {
        sv::apply_fourier(s, name, setup.ancilla_dim, sv::Direction::Forward);
    }
}

std::vector<double> ancilla_marginal(sv::StateView s, std::uint64_t repetitions) {
    return sv::marginal(s, ancilla_names(repetitions));
}

std::uint64_t tuple_index(std::span<const std::uint64_t> ls, std::uint64_t P) {
    std::uint64_t idx = 0;
    for (std::uint64_t l : ls) {
        idx = idx * P + l;
    }
    return idx;
}

std::vector<double> predict_distribution(std::uint64_t domain_dim, std::uint64_t t,
                                         std::uint64_t P, std::uint64_t repetitions) {
    if (t > domain_dim) {
        throw ConfigError("predict_distribution: t must not exceed the domain");
    }
    const SincWeights w{peak_position(t, domain_dim, P), P};
    std::vector<double> s_plus(P);
    std::vector<double> s_minus(P);
    for (std::uint64_t l = 0; l < P; ++l) {
        s_plus[l] = w.s_plus(l);
        s_minus[l] = w.s_minus(l);
    }
    std::uint64_t out_dim = 1;
    for (std::uint64_t i = 0; i < repetitions; ++i) {
        out_dim *= P;
    }
    std::vector<double> probs(out_dim);
    for (std::uint64_t idx = 0; idx < out_dim; ++idx) {
        double prod_plus = 1.0;
        double prod_minus = 1.0;
        std::uint64_t rest = idx;
        for (std::uint64_t i = 0; i < repetitions; ++i) {
            std::uint64_t shift = 1;
            for (std::uint64_t j = i + 1; j < repetitions; ++j) {
                shift *= P;
            }
            const std::uint64_t l = rest / shift;
            rest %= shift;
            prod_plus *= s_plus[l];
            prod_minus *= s_minus[l];
        }
        probs[idx] = 0.5 * (prod_plus * prod_plus + prod_minus * prod_minus);
    }
    return probs;
}

std::vector<std::uint64_t> peak_outcomes(double f, std::uint64_t P) {
    std::set<std::uint64_t> outcomes;
    const auto lo = static_cast<std::uint64_t>(std::floor(f));
    const auto hi = static_cast<std::uint64_t>(std::ceil(f));
    outcomes.insert(lo % P);
    outcomes.insert(hi % P);
    outcomes.insert((P - lo % P) % P);
    outcomes.insert((P - hi % P) % P);
    return {outcomes.begin(), outcomes.end()};
}

std::uint64_t sample_index(std::span<const double> probs, std::mt19937_64& rng) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double cdf = 0.0;
    for (std::uint64_t v = 0; v + 1 < probs.size(); ++v) {
        cdf += probs[v];
        if (u < cdf) {
            return v;
        }
    }
    return probs.size() - 1;
}

}  // namespace qnt::counting

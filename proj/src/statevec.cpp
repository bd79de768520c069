#include "qnt/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <unordered_map>
#include <utility>

#include "qnt/errors.hpp"
#include "json.hpp"

namespace qnt::sv {

namespace {

constexpr std::uint64_t kHardDimCeiling = 1ULL << 24;

std::vector<cplx> twiddles(std::uint64_t d, Direction dir) {
    const double sign = (dir == Direction::Forward) ? 1.0 : -1.0;
    std::vector<cplx> tw(d);
    for (std::uint64_t j = 0; j < d; ++j) {
        tw[j] = std::polar(1.0, sign * 2.0 * std::numbers::pi *
                                    static_cast<double>(j) / static_cast<double>(d));
    }
    return tw;
}

// F_d on a strided window: y[b] = sum_a e^{+-2 pi i ab/d} x[a] / sqrt(d).
void fourier_window(cplx* base, std::uint64_t stride, std::uint64_t d,
                    std::span<const cplx> tw, std::span<cplx> scratch) {
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::uint64_t b = 0; b < d; ++b) {
        cplx acc{0.0, 0.0};
        std::uint64_t phase = 0;  // (a*b) mod d, updated incrementally
        for (std::uint64_t a = 0; a < d; ++a) {
            acc += tw[phase] * base[a * stride];
            phase += b;
            if (phase >= d) {
                phase -= d;
            }
        }
        scratch[b] = acc * inv_sqrt_d;
    }
    for (std::uint64_t b = 0; b < d; ++b) {
        base[b * stride] = scratch[b];
    }
}

// One Grover iterate on a contiguous window after gathering: phase-flip the
// marked values, then 2*mean - amp (the flat-state reflection combined with
// the leading minus sign of G).
void grover_window(std::span<cplx> window, std::span<const char> mask,
                   std::uint64_t m_steps) {
    const std::uint64_t d = window.size();
    const double inv_d = 1.0 / static_cast<double>(d);
    for (std::uint64_t step = 0; step < m_steps; ++step) {
        cplx sum{0.0, 0.0};
        for (std::uint64_t j = 0; j < d; ++j) {
            if (mask[j]) {
                window[j] = -window[j];
            }
            sum += window[j];
        }
        const cplx two_mean = 2.0 * sum * inv_d;
        for (std::uint64_t j = 0; j < d; ++j) {
            window[j] = two_mean - window[j];
        }
    }
}

// Adjoint iterate: undo the reflection first, then the phase flip.
void grover_window_adjoint(std::span<cplx> window, std::span<const char> mask,
                           std::uint64_t m_steps) {
    const std::uint64_t d = window.size();
    const double inv_d = 1.0 / static_cast<double>(d);
    for (std::uint64_t step = 0; step < m_steps; ++step) {
        cplx sum{0.0, 0.0};
        for (std::uint64_t j = 0; j < d; ++j) {
            sum += window[j];
        }
        const cplx two_mean = 2.0 * sum * inv_d;
        for (std::uint64_t j = 0; j < d; ++j) {
            window[j] = two_mean - window[j];
            if (mask[j]) {
                window[j] = -window[j];
            }
        }
    }
}

struct Axis {
    std::size_t reg_index;
    std::uint64_t dim;
    std::uint64_t stride;
};

Axis axis_of(const RegisterLayout& layout, std::string_view reg) {
    const std::size_t i = layout.index_of(reg);
    return Axis{i, layout.dim(i), layout.stride(i)};
}

// Visit the base index of every slice along one register axis. The basis
// value of the axis register is 0 at each base.
template <typename Fn>
void for_each_slice(const RegisterLayout& layout, const Axis& axis, Fn&& fn) {
    const std::uint64_t total = layout.total_dim();
    const std::uint64_t block = axis.dim * axis.stride;
    for (std::uint64_t hi = 0; hi < total; hi += block) {
        for (std::uint64_t lo = 0; lo < axis.stride; ++lo) {
            fn(hi + lo);
        }
    }
}

}  // namespace

RegisterLayout::RegisterLayout(std::vector<Register> regs) : regs_(std::move(regs)) {
    if (regs_.empty()) {
        throw ConfigError("layout: at least one register required");
    }
    strides_.assign(regs_.size(), 1);
    total_ = 1;
    for (std::size_t i = regs_.size(); i-- > 0;) {
        const Register& r = regs_[i];
        if (r.dim < 1) {
            throw ConfigError("layout: register '" + r.name + "' needs dim >= 1");
        }
        strides_[i] = total_;
        if (r.dim > 1 && total_ > std::numeric_limits<std::uint64_t>::max() / r.dim) {
            throw CapacityError("layout: total dimension overflows");
        }
        total_ *= r.dim;
    }
    for (std::size_t i = 0; i < regs_.size(); ++i) {
        for (std::size_t j = i + 1; j < regs_.size(); ++j) {
            if (regs_[i].name == regs_[j].name) {
                throw ConfigError("layout: duplicate register name '" + regs_[i].name + "'");
            }
        }
    }
}

std::size_t RegisterLayout::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < regs_.size(); ++i) {
        if (regs_[i].name == name) {
            return i;
        }
    }
    throw ConfigError("layout: no register named '" + std::string(name) + "'");
}

bool RegisterLayout::has_register(std::string_view name) const {
    for (const Register& r : regs_) {
        if (r.name == name) {
            return true;
        }
    }
    return false;
}

void RegisterLayout::decode(std::uint64_t basis, std::span<std::uint64_t> out) const {
    for (std::size_t i = 0; i < regs_.size(); ++i) {
        out[i] = basis / strides_[i] % regs_[i].dim;
    }
}

std::uint64_t dimension_cap() {
    std::uint64_t cap = kHardDimCeiling;
    if (const char* env = std::getenv("QNT_MAX_DIM")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v >= 1) {
            cap = std::min<std::uint64_t>(cap, v);
        }
    }
    return cap;
}

QState QState::zero(RegisterLayout layout) {
    const std::uint64_t total = layout.total_dim();
    if (total > dimension_cap()) {
        throw CapacityError("state of dimension " + std::to_string(total) +
                            " exceeds the cap of " + std::to_string(dimension_cap()));
    }
    std::vector<cplx> amps(total, cplx{0.0, 0.0});
    amps[0] = cplx{1.0, 0.0};
    return QState(std::move(layout), std::move(amps));
}

void OpLog::record_unitary(std::string kind, std::function<void(StateView)> inverse) {
    entries_.push_back(Entry{std::move(kind), true, std::move(inverse)});
}

void OpLog::record_measurement() {
    entries_.push_back(Entry{"measure", false, nullptr});
}

bool OpLog::contains_measurement() const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [](const Entry& e) { return !e.unitary; });
}

void apply_fourier(StateView s, std::string_view reg, std::uint64_t eff_dim,
                   Direction dir, OpLog* log) {
    const Axis axis = axis_of(*s.layout, reg);
    if (eff_dim < 1 || eff_dim > axis.dim) {
        throw ConfigError("fourier: effective dim out of range for '" +
                          std::string(reg) + "'");
    }
    const std::vector<cplx> tw = twiddles(eff_dim, dir);
    std::vector<cplx> scratch(eff_dim);
    cplx* data = s.amps.data();
    for_each_slice(*s.layout, axis, [&](std::uint64_t base) {
        fourier_window(data + base, axis.stride, eff_dim, tw, scratch);
    });
    if (log) {
        const Direction inv = (dir == Direction::Forward) ? Direction::Inverse
                                                          : Direction::Forward;
        log->record_unitary("fourier", [=, r = std::string(reg)](StateView v) {
            apply_fourier(v, r, eff_dim, inv);
        });
    }
}

void apply_controlled_fourier(StateView s, std::string_view control,
                              std::string_view target,
                              const std::function<std::uint64_t(std::uint64_t)>& dim_of,
                              Direction dir, OpLog* log) {
    const Axis ctrl = axis_of(*s.layout, control);
    const Axis tgt = axis_of(*s.layout, target);
    if (ctrl.reg_index == tgt.reg_index) {
        throw ConfigError("controlled fourier: control and target coincide");
    }
    for (std::uint64_t c = 0; c < ctrl.dim; ++c) {
        if (dim_of(c) < 1 || dim_of(c) > tgt.dim) {
            throw ConfigError("controlled fourier: branch dim out of range");
        }
    }
    std::unordered_map<std::uint64_t, std::vector<cplx>> tw_cache;
    std::vector<cplx> scratch(tgt.dim);
    cplx* data = s.amps.data();
    for_each_slice(*s.layout, tgt, [&](std::uint64_t base) {
        const std::uint64_t c = s.layout->value(base, ctrl.reg_index);
        const std::uint64_t d = dim_of(c);
        auto it = tw_cache.find(d);
        if (it == tw_cache.end()) {
            it = tw_cache.emplace(d, twiddles(d, dir)).first;
        }
        fourier_window(data + base, tgt.stride, d, it->second,
                       std::span<cplx>(scratch.data(), d));
    });
    if (log) {
        const Direction inv = (dir == Direction::Forward) ? Direction::Inverse
                                                          : Direction::Forward;
        log->record_unitary("controlled_fourier",
                            [=, c = std::string(control),
                             t = std::string(target)](StateView v) {
                                apply_controlled_fourier(v, c, t, dim_of, inv);
                            });
    }
}

void apply_phase_flip_zero(StateView s, std::span<const std::string> regs,
                           const std::optional<ValueGate>& gate, OpLog* log) {
    const RegisterLayout& layout = *s.layout;
    std::vector<Axis> axes;
    axes.reserve(regs.size());
    for (const std::string& r : regs) {
        axes.push_back(axis_of(layout, r));
    }
    std::optional<Axis> gate_axis;
    if (gate) {
        gate_axis = axis_of(layout, gate->reg);
    }
    const std::uint64_t total = layout.total_dim();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        bool all_zero = true;
        for (const Axis& a : axes) {
            if (idx / a.stride % a.dim != 0) {
                all_zero = false;
                break;
            }
        }
        if (!all_zero) {
            continue;
        }
        if (gate_axis &&
            !gate->pass(idx / gate_axis->stride % gate_axis->dim)) {
            continue;
        }
        s.amps[idx] = -s.amps[idx];
    }
    if (log) {
        std::vector<std::string> regs_copy(regs.begin(), regs.end());
        log->record_unitary("phase_flip_zero", [=](StateView v) {
            apply_phase_flip_zero(v, regs_copy, gate);  // involution
        });
    }
}

void apply_phase_flip(StateView s, const BasisPredicate& pred, OpLog* log) {
    const RegisterLayout& layout = *s.layout;
    const std::uint64_t total = layout.total_dim();
    std::vector<std::uint64_t> tuple(layout.register_count());
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        layout.decode(idx, tuple);
        if (pred(tuple)) {
            s.amps[idx] = -s.amps[idx];
        }
    }
    if (log) {
        log->record_unitary("phase_flip",
                            [pred](StateView v) { apply_phase_flip(v, pred); });
    }
}

namespace {

// Shared body of the Grover kernels: gather the [0, d) window of each
// target-axis slice, build the marked mask once per slice, iterate.
void grover_power_impl(StateView s, std::span<const std::string> controls,
                       std::string_view target, const EffectiveDim& eff,
                       const TargetMarker& marked, bool adjoint,
                       std::uint64_t fixed_power, bool power_from_controls) {
    const RegisterLayout& layout = *s.layout;
    const Axis tgt = axis_of(layout, target);
    std::vector<Axis> ctrl_axes;
    ctrl_axes.reserve(controls.size());
    for (const std::string& c : controls) {
        ctrl_axes.push_back(axis_of(layout, c));
        if (ctrl_axes.back().reg_index == tgt.reg_index) {
            throw ConfigError("grover power: control and target coincide");
        }
    }
    std::vector<std::uint64_t> tuple(layout.register_count());
    std::vector<cplx> window(tgt.dim);
    std::vector<char> mask(tgt.dim);
    cplx* data = s.amps.data();
    for_each_slice(layout, tgt, [&](std::uint64_t base) {
        std::uint64_t m = fixed_power;
        if (power_from_controls) {
            m = 0;
            for (const Axis& c : ctrl_axes) {
                m += base / c.stride % c.dim;
            }
        }
        if (m == 0) {
            return;
        }
        layout.decode(base, tuple);
        const std::uint64_t d = eff.resolve(layout, tuple);
        if (d < 1 || d > tgt.dim) {
            throw ConfigError("grover power: effective dim out of range");
        }
        if (d == 1) {
            // 1-dim search space: both reflections are trivial, G = identity.
            return;
        }
        for (std::uint64_t j = 0; j < d; ++j) {
            tuple[tgt.reg_index] = j;
            mask[j] = marked(j, tuple) ? 1 : 0;
        }
        cplx* slice = data + base;
        for (std::uint64_t j = 0; j < d; ++j) {
            window[j] = slice[j * tgt.stride];
        }
        auto w = std::span<cplx>(window.data(), d);
        auto mk = std::span<const char>(mask.data(), d);
        if (adjoint) {
            grover_window_adjoint(w, mk, m);
        } else {
            grover_window(w, mk, m);
        }
        for (std::uint64_t j = 0; j < d; ++j) {
            slice[j * tgt.stride] = window[j];
        }
    });
}

}  // namespace

EffectiveDim EffectiveDim::fixed(std::uint64_t d) {
    EffectiveDim e;
    e.fixed_dim = d;
    return e;
}

EffectiveDim EffectiveDim::from_register(
    std::string reg, std::function<std::uint64_t(std::uint64_t)> transform) {
    EffectiveDim e;
    e.source_reg = std::move(reg);
    e.transform = std::move(transform);
    return e;
}

std::uint64_t EffectiveDim::resolve(const RegisterLayout& layout,
                                    std::span<const std::uint64_t> tuple) const {
    if (fixed_dim) {
        return *fixed_dim;
    }
    std::uint64_t v = tuple[layout.index_of(source_reg)];
    if (transform) {
        v = transform(v);
    }
    return std::max<std::uint64_t>(v, 1);
}

void grover_step(StateView s, std::string_view target, std::uint64_t eff_dim,
                 const std::function<bool(std::uint64_t)>& marked, OpLog* log) {
    const TargetMarker wrapped =
        [&marked](std::uint64_t v, std::span<const std::uint64_t>) {
            return marked(v);
        };
    grover_power_impl(s, {}, target, EffectiveDim::fixed(eff_dim), wrapped,
                      /*adjoint=*/false, /*fixed_power=*/1,
                      /*power_from_controls=*/false);
    if (log) {
        log->record_unitary("grover_step",
                            [=, t = std::string(target)](StateView v) {
                                const TargetMarker w =
                                    [marked](std::uint64_t x,
                                             std::span<const std::uint64_t>) {
                                        return marked(x);
                                    };
                                grover_power_impl(v, {}, t,
                                                  EffectiveDim::fixed(eff_dim), w,
                                                  true, 1, false);
                            });
    }
}

void apply_controlled_grover_power(StateView s,
                                   std::span<const std::string> controls,
                                   std::string_view target,
                                   const EffectiveDim& eff,
                                   const TargetMarker& marked, OpLog* log) {
    grover_power_impl(s, controls, target, eff, marked, /*adjoint=*/false,
                      /*fixed_power=*/0, /*power_from_controls=*/true);
    if (log) {
        std::vector<std::string> ctrls(controls.begin(), controls.end());
        log->record_unitary("controlled_grover_power",
                            [=, t = std::string(target)](StateView v) {
                                grover_power_impl(v, ctrls, t, eff, marked, true,
                                                  0, true);
                            });
    }
}

std::vector<double> marginal(StateView s, std::string_view reg) {
    const std::string regs[] = {std::string(reg)};
    return marginal(s, regs);
}

std::vector<double> marginal(StateView s, std::span<const std::string> regs) {
    const RegisterLayout& layout = *s.layout;
    struct Part {
        std::uint64_t stride, dim, weight;
    };
    std::vector<Part> parts(regs.size());
    std::uint64_t out_dim = 1;
    for (std::size_t i = regs.size(); i-- > 0;) {
        const Axis a = axis_of(layout, regs[i]);
        parts[i] = Part{a.stride, a.dim, out_dim};
        out_dim *= a.dim;
    }
    std::vector<double> probs(out_dim, 0.0);
    const std::uint64_t total = layout.total_dim();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t key = 0;
        for (const Part& p : parts) {
            key += idx / p.stride % p.dim * p.weight;
        }
        probs[key] += std::norm(s.amps[idx]);
    }
    return probs;
}

std::uint64_t measure(StateView s, std::string_view reg, std::mt19937_64& rng,
                      OpLog* log) {
    const Axis axis = axis_of(*s.layout, reg);
    const std::vector<double> probs = marginal(s, reg);
    // 53-bit uniform draw in [0, 1); portable across standard libraries.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    std::uint64_t outcome = axis.dim - 1;
    double cdf = 0.0;
    for (std::uint64_t v = 0; v < axis.dim; ++v) {
        cdf += probs[v];
        if (u < cdf) {
            outcome = v;
            break;
        }
    }
    const double p = probs[outcome];
    const double scale = p > 0.0 ? 1.0 / std::sqrt(p) : 0.0;
    const std::uint64_t total = s.layout->total_dim();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        if (idx / axis.stride % axis.dim == outcome) {
            s.amps[idx] *= scale;
        } else {
            s.amps[idx] = cplx{0.0, 0.0};
        }
    }
    if (log) {
        log->record_measurement();
    }
    return outcome;
}

void run_adjoint(StateView s, const OpLog& log) {
    if (log.contains_measurement()) {
        throw ConfigError("run_adjoint: log contains a measurement");
    }
    const auto& entries = log.entries();
    for (std::size_t i = entries.size(); i-- > 0;) {
        entries[i].inverse(s);
    }
}

double norm_sq(StateView s) {
    double acc = 0.0;
    for (const cplx& a : s.amps) {
        acc += std::norm(a);
    }
    return acc;
}

std::string dump_json(StateView s, double prob_threshold) {
    nlohmann::ordered_json j;
    j["layout"] = nlohmann::ordered_json::array();
    for (const Register& r : s.layout->registers()) {
        j["layout"].push_back({{"name", r.name}, {"dim", r.dim}});
    }
    j["amplitudes"] = nlohmann::ordered_json::array();
    for (std::uint64_t idx = 0; idx < s.layout->total_dim(); ++idx) {
        if (std::norm(s.amps[idx]) > prob_threshold) {
            j["amplitudes"].push_back(
                {{"index", idx}, {"re", s.amps[idx].real()}, {"im", s.amps[idx].imag()}});
        }
    }
    return j.dump();
}

}  // namespace qnt::sv

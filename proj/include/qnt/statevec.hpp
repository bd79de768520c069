#pragma once

// Exact dense state-vector simulation over an ordered product of named
// registers of arbitrary dimension, with the unitary primitives every
// pipeline in the project is assembled from: discrete Fourier transforms,
// phase flips, Grover iterates and their controlled powers.
//
// Conventions:
//  * the first register in a layout is the most significant in the basis
//    index; the last has stride 1;
//  * an operation with an effective dimension d acts on basis values
//    [0, d) of its target register and as the identity on [d, dim), so a
//    value-controlled operation stays unitary as a direct sum;
//  * every public operation preserves the norm to ~1e-12.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qnt::sv {

using cplx = std::complex<double>;

struct Register {
    std::string name;
    std::uint64_t dim = 0;
};

class RegisterLayout {
public:
    RegisterLayout() = default;
    explicit RegisterLayout(std::vector<Register> regs);

    std::uint64_t total_dim() const { return total_; }
    std::size_t register_count() const { return regs_.size(); }
    const Register& reg(std::size_t i) const { return regs_[i]; }
    const std::vector<Register>& registers() const { return regs_; }

    /// Position of a register by name; throws ConfigError if absent.
    std::size_t index_of(std::string_view name) const;
    bool has_register(std::string_view name) const;

    std::uint64_t dim(std::size_t i) const { return regs_[i].dim; }
    std::uint64_t stride(std::size_t i) const { return strides_[i]; }

    /// Basis value of register i inside a flat basis index.
    std::uint64_t value(std::uint64_t basis, std::size_t i) const {
        return basis / strides_[i] % regs_[i].dim;
    }

    /// Decode a flat basis index into one value per register.
    void decode(std::uint64_t basis, std::span<std::uint64_t> out) const;

private:
    std::vector<Register> regs_;
    std::vector<std::uint64_t> strides_;
    std::uint64_t total_ = 1;
};

/// Current dense-vector dimension cap. Defaults to 2^24; the environment
/// variable QNT_MAX_DIM lowers (never raises) it.
std::uint64_t dimension_cap();

/// Non-owning view of amplitudes with their layout. Pipeline code uses
/// views to address contiguous branches of a larger state.
struct StateView {
    const RegisterLayout* layout = nullptr;
    std::span<cplx> amps;

    std::uint64_t total_dim() const { return layout->total_dim(); }
};

class QState {
public:
    /// |0...0>: amplitude 1 on the all-zeros basis state.
    static QState zero(RegisterLayout layout);

    const RegisterLayout& layout() const { return layout_; }
    std::span<const cplx> amps() const { return amps_; }
    std::span<cplx> amps() { return amps_; }
    StateView view() { return StateView{&layout_, amps_}; }

private:
    QState(RegisterLayout layout, std::vector<cplx> amps)
        : layout_(std::move(layout)), amps_(std::move(amps)) {}

    RegisterLayout layout_;
    std::vector<cplx> amps_;
};

enum class Direction { Forward, Inverse };

/// Pure predicate on a full tuple of register basis values, in layout order.
using BasisPredicate = std::function<bool(std::span<const std::uint64_t>)>;

/// Marked-state test for Grover steps: target value plus the values of the
/// other registers of the slice being acted on (the target's own entry in
/// the tuple is not meaningful).
using TargetMarker =
    std::function<bool(std::uint64_t, std::span<const std::uint64_t>)>;

/// Optional classical gate on one register's value: when present, an
/// operation only acts on basis states whose gate register passes.
struct ValueGate {
    std::string reg;
    std::function<bool(std::uint64_t)> pass;
};

/// Explicit opt-in recording of applied operations, for exact uncomputation.
class OpLog {
public:
    void record_unitary(std::string kind, std::function<void(StateView)> inverse);
    void record_measurement();
    std::size_t size() const { return entries_.size(); }
    bool contains_measurement() const;

    struct Entry {
        std::string kind;
        bool unitary = true;
        std::function<void(StateView)> inverse;
    };
    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::vector<Entry> entries_;
};

/// Fourier transform F_d on basis values [0, d) of one register, identity
/// on [d, dim); entries e^{+-2 pi i ab/d}/sqrt(d). Applied independently on
/// every joint configuration of the other registers.
void apply_fourier(StateView s, std::string_view reg, std::uint64_t eff_dim,
                   Direction dir, OpLog* log = nullptr);

/// On each control branch c, F_{dim_of(c)} on the target register.
void apply_controlled_fourier(StateView s, std::string_view control,
                              std::string_view target,
                              const std::function<std::uint64_t(std::uint64_t)>& dim_of,
                              Direction dir, OpLog* log = nullptr);

/// Negate amplitudes of basis states whose listed registers are all zero,
/// optionally gated on another register's value.
void apply_phase_flip_zero(StateView s, std::span<const std::string> regs,
                           const std::optional<ValueGate>& gate = std::nullopt,
                           OpLog* log = nullptr);

/// amp(x) -> -amp(x) wherever the predicate holds.
void apply_phase_flip(StateView s, const BasisPredicate& pred, OpLog* log = nullptr);

/// One Grover iterate G = (2|f><f| - 1) S_marked restricted to basis values
/// [0, d) of the target register, where |f> is the flat state over [0, d)
/// and S_marked negates marked values. Identity on [d, dim).
void grover_step(StateView s, std::string_view target, std::uint64_t eff_dim,
                 const std::function<bool(std::uint64_t)>& marked,
                 OpLog* log = nullptr);

/// How the effective dimension of a Grover power is chosen per branch.
struct EffectiveDim {
    static EffectiveDim fixed(std::uint64_t d);
    /// max(value, 1) of a register, optionally transformed.
    static EffectiveDim from_register(
        std::string reg,
        std::function<std::uint64_t(std::uint64_t)> transform = nullptr);

    std::uint64_t resolve(const RegisterLayout& layout,
                          std::span<const std::uint64_t> tuple) const;

    std::optional<std::uint64_t> fixed_dim;
    std::string source_reg;
    std::function<std::uint64_t(std::uint64_t)> transform;
};

/// G^(m1+...+mR) on the target register, with the power read from the
/// control registers of each branch and the effective dimension resolved
/// per branch (fixed or taken from another register, as in a k-controlled
/// search space).
void apply_controlled_grover_power(StateView s,
                                   std::span<const std::string> controls,
                                   std::string_view target,
                                   const EffectiveDim& eff,
                                   const TargetMarker& marked,
                                   OpLog* log = nullptr);

/// Exact Born-rule marginal of one register.
std::vector<double> marginal(StateView s, std::string_view reg);

/// Joint marginal of several registers, indexed in the given order
/// (first listed register most significant).
std::vector<double> marginal(StateView s, std::span<const std::string> regs);

/// Sample one register from its marginal, collapse and renormalize.
/// Deterministic for a given generator state.
std::uint64_t measure(StateView s, std::string_view reg, std::mt19937_64& rng,
                      OpLog* log = nullptr);

/// Apply the inverse of every recorded operation in reverse order.
/// Rejects logs containing measurements.
void run_adjoint(StateView s, const OpLog& log);

double norm_sq(StateView s);

/// Debug JSON dump: layout plus (index, re, im) triples for amplitudes
/// with |amp|^2 above the threshold.
std::string dump_json(StateView s, double prob_threshold);

}  // namespace qnt::sv

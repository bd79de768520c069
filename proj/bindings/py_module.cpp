// Python bindings for the core operations. Pipeline runs return their JSON
// report as a string; the qnt package parses it into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qnt/counting.hpp"
#include "qnt/hl.hpp"
#include "qnt/ntcore.hpp"
#include "qnt/pnt.hpp"
#include "qnt/primality.hpp"
#include "qnt/report.hpp"

namespace py = pybind11;
using namespace qnt;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact state-vector simulation of quantum counting pipelines "
              "over number-theoretic oracles";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);

    // classical number theory
    m.def("decompose_odd", [](std::uint64_t n) {
        const nt::OddDecomposition d = nt::decompose_odd(n);
        return py::make_tuple(d.h, d.l);
    }, py::arg("n"), "Factor n as 2^h * l with l odd; returns (h, l).");
    m.def("mod_pow", &nt::mod_pow, py::arg("base"), py::arg("exp"), py::arg("mod"));
    m.def("is_witness", &nt::is_witness, py::arg("k"), py::arg("a"),
          "Strong compositeness witness test for base a of k.");
    m.def("count_witnesses", &nt::count_witnesses, py::arg("k"));
    m.def("strong_liars", &nt::strong_liars, py::arg("k"));
    m.def("sieve_pi", [](std::uint64_t n) {
        const nt::SieveResult r = nt::sieve_pi(n);
        return py::make_tuple(r.count, r.primes);
    }, py::arg("n"), "Exact prime count below n; returns (count, primes).");
    m.def("r2_pairs", &nt::r2_pairs, py::arg("two_n"),
          "Ordered prime-pair representations of an even 2N.");

    // counting analytics
    m.def("sinc_weight", &counting::sinc_weight, py::arg("x"), py::arg("p"));
    m.def("peak_position", &counting::peak_position, py::arg("t"),
          py::arg("domain_dim"), py::arg("p"));
    m.def("predict_distribution", &counting::predict_distribution,
          py::arg("domain_dim"), py::arg("t"), py::arg("p"), py::arg("r"),
          "Analytic outcome distribution of the counting transform.");
    m.def("estimate_from_outcome", [](std::uint64_t outcome, std::uint64_t p,
                                      std::uint64_t domain_dim) {
        const counting::CountEstimate e =
            counting::estimate_from_outcome(outcome, p, domain_dim);
        py::dict d;
        d["outcome"] = e.outcome;
        d["f"] = e.f;
        d["theta"] = e.theta;
        d["t"] = e.t;
        d["error_bound"] = e.error_bound;
        return d;
    }, py::arg("outcome"), py::arg("p"), py::arg("domain_dim"));

    // pipelines (JSON report strings)
    m.def("witness_report_json", [](std::uint64_t k) {
        return report::witness_report(k).dump();
    }, py::arg("k"));
    m.def("count_report_json",
          [](std::uint64_t k, std::uint64_t p, std::uint64_t r, std::uint64_t reps,
             std::uint64_t seed) {
              return report::count_report({k, p, r, reps, seed, -1.0}).dump();
          },
          py::arg("k"), py::arg("p") = 8, py::arg("r") = 1, py::arg("reps") = 1,
          py::arg("seed") = 0);
    m.def("primality_report_json",
          [](std::uint64_t k, std::uint64_t p, std::uint64_t r, std::uint64_t seed) {
              return report::primality_report({k, p, r, seed}).dump();
          },
          py::arg("k"), py::arg("p") = 8, py::arg("r") = 1, py::arg("seed") = 0);
    m.def("pnt_report_json",
          [](std::uint64_t n, std::uint64_t p, std::uint64_t q, std::uint64_t reps,
             std::uint64_t seed, double delta) {
              const pnt::PntResult result =
                  pnt::run_prime_count({n, p, q, reps, seed, delta});
              return report::pnt_report(result).dump();
          },
          py::arg("n"), py::arg("p") = 8, py::arg("q") = 16, py::arg("reps") = 1,
          py::arg("seed") = 0, py::arg("delta") = 0.0);
    m.def("hl_report_json",
          [](std::uint64_t two_n, std::uint64_t p, std::uint64_t q,
             std::uint64_t reps, std::uint64_t seed, double nu, double mu) {
              const hl::HlResult result =
                  hl::run_pair_count({two_n, p, q, reps, seed, nu, mu});
              return report::hl_report(result).dump();
          },
          py::arg("two_n"), py::arg("p") = 8, py::arg("q") = 16,
          py::arg("reps") = 1, py::arg("seed") = 0, py::arg("nu") = 0.5,
          py::arg("mu") = 2.0);

    // direct numeric probes used by the smoke tests
    m.def("zero_probability", &primality::zero_probability, py::arg("k"),
          py::arg("p"), py::arg("r"),
          "Exact all-zero ancilla probability of the primality test.");
    m.def("alpha_closed_form", &primality::alpha_closed_form, py::arg("k"),
          py::arg("p"));
    m.def("prime_flip_residual", [](std::uint64_t n, std::uint64_t p) {
        return pnt::prime_flip_residual(n, p);
    }, py::arg("n"), py::arg("p"));
    m.def("pair_flip_residual", [](std::uint64_t two_n, std::uint64_t p) {
        return hl::pair_flip_residual(two_n, p);
    }, py::arg("two_n"), py::arg("p"));
}

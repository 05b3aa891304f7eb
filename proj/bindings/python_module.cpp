#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "ranksync/bounds.hpp"
#include "ranksync/errors.hpp"
#include "ranksync/harness.hpp"
#include "ranksync/protocols.hpp"

namespace py = pybind11;
using namespace ranksync;

namespace {

// 128-bit ranks cross the boundary as exact python ints, via decimal strings.
py::int_ to_py(u128 v) {
  PyObject* obj = PyLong_FromString(u128_str(v).c_str(), nullptr, 10);
  if (!obj) throw py::error_already_set();
  return py::reinterpret_steal<py::int_>(obj);
}

u128 from_py(const py::int_& v) {
  const std::string s = py::str(v);
  if (!s.empty() && s[0] == '-') throw std::invalid_argument("value must be nonnegative");
  u128 r = 0;
  const u128 cap = ~u128{0};
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("not a decimal integer: " + s);
    const int digit = c - '0';
    if (r > (cap - static_cast<u128>(digit)) / 10)
      throw std::overflow_error("value needs more than 128 bits");
    r = r * 10 + static_cast<u128>(digit);
  }
  return r;
}

Permutation perm(const std::vector<int>& values) { return Permutation(values); }

PartialPermutation partial(const std::vector<int>& values, int universe) {
  return PartialPermutation(values, universe);
}

py::dict outcome_dict(const SyncOutcome& out) {
  const TranscriptTotals& t = out.transcript.totals();
  py::dict d;
  d["success"] = out.success;
  d["restored"] = out.restored.values();
  d["forward_wire"] = t.forward.wire;
  d["forward_ideal"] = t.forward.ideal;
  d["feedback_wire"] = t.feedback.wire;
  d["feedback_ideal"] = t.feedback.ideal;
  d["rounds"] = t.rounds;
  d["messages"] = out.transcript.messages().size();
  return d;
}

Accounting accounting_from(const std::string& name) {
  if (name == "ideal") return Accounting::Ideal;
  if (name == "wire") return Accounting::Wire;
  if (name == "both") return Accounting::Both;
  throw std::invalid_argument("unknown accounting: " + name);
}

}  // namespace

PYBIND11_MODULE(_ranksync, m) {
  m.doc() = "Exact synchronization of permutations over a two-way channel";
  m.attr("__version__") = "0.1.0";

  // --- sequence primitives --------------------------------------------------
  m.def(
      "inversion_bits",
      [](const std::vector<int>& seq) { return inversion_bits(seq); },
      py::arg("seq"), "Descent indicator: bit i is 1 iff seq[i] > seq[i+1].");
  m.def(
      "vt_syndrome",
      [](const std::vector<uint8_t>& bits, int modulus) { return vt_syndrome(bits, modulus); },
      py::arg("bits"), py::arg("modulus"));
  m.def(
      "sequence_vt_syndrome",
      [](const std::vector<int>& seq) { return sequence_vt_syndrome(seq); }, py::arg("seq"),
      "Descent syndrome of a sequence, mod its length.");
  m.def(
      "checksum", [](const std::vector<int>& seq) { return checksum(seq); }, py::arg("seq"));
  m.def(
      "reinsert_by_vt",
      [](const std::vector<int>& seq, int symbol, int target) {
        return reinsert_by_vt(seq, symbol, target);
      },
      py::arg("seq"), py::arg("symbol"), py::arg("target"),
      "Insert symbol at the unique position that restores the target syndrome.");
  m.def(
      "deinterleave", [](const std::vector<int>& seq, int d) { return deinterleave(seq, d); },
      py::arg("seq"), py::arg("stride"));
  m.def("interleave", &interleave, py::arg("parts"));
  m.def(
      "missing_symbols",
      [](const std::vector<int>& values, int universe) {
        return missing_symbols(partial(values, universe));
      },
      py::arg("values"), py::arg("universe"));

  // --- corruption models ----------------------------------------------------
  m.def(
      "delete_positions",
      [](const std::vector<int>& seq, const std::vector<int>& positions) {
        return delete_positions(seq, positions);
      },
      py::arg("seq"), py::arg("positions"));
  m.def(
      "apply_translocation",
      [](const std::vector<int>& values, int from, int to) {
        return apply_translocation(perm(values), from, to).values();
      },
      py::arg("values"), py::arg("from_pos"), py::arg("to_pos"));
  m.def(
      "apply_transposition",
      [](const std::vector<int>& values, int a, int b) {
        return apply_transposition(perm(values), a, b).values();
      },
      py::arg("values"), py::arg("a"), py::arg("b"));

  // --- codec ----------------------------------------------------------------
  m.def("binomial", [](int n, int k) { return to_py(binomial(n, k)); }, py::arg("n"),
        py::arg("k"));
  m.def("factorial", [](int d) { return to_py(factorial(d)); }, py::arg("d"));
  m.def("bit_width", [](const py::int_& count) { return bit_width(from_py(count)); },
        py::arg("count"), "Smallest w with count <= 2**w.");
  m.def("log2_binomial", &log2_binomial, py::arg("n"), py::arg("k"));
  m.def("log2_factorial", &log2_factorial, py::arg("d"));
  m.def(
      "subset_rank",
      [](const std::vector<int>& subset, int n) { return to_py(subset_rank(subset, n)); },
      py::arg("subset"), py::arg("n"), "Colexicographic rank of an ascending subset of [1, n].");
  m.def(
      "subset_unrank",
      [](const py::int_& rank, int n, int d) { return subset_unrank(from_py(rank), n, d); },
      py::arg("rank"), py::arg("n"), py::arg("d"));
  m.def(
      "ordering_rank",
      [](const std::vector<int>& seq, const std::vector<int>& sorted_ref) {
        return to_py(ordering_rank(seq, sorted_ref));
      },
      py::arg("seq"), py::arg("sorted_ref"));
  m.def(
      "ordering_unrank",
      [](const py::int_& rank, const std::vector<int>& sorted_ref) {
        return ordering_unrank(from_py(rank), sorted_ref);
      },
      py::arg("rank"), py::arg("sorted_ref"));

  // --- protocols -------------------------------------------------------------
  m.def(
      "sync_deletions_interactive",
      [](const std::vector<int>& x, const std::vector<int>& y, int d) {
        return outcome_dict(sync_deletions_interactive(perm(x), partial(y, int(x.size())), d));
      },
      py::arg("x"), py::arg("y"), py::arg("d"));
  m.def(
      "sync_deletions_limited_feedback",
      [](const std::vector<int>& x, const std::vector<int>& y, int d) {
        return outcome_dict(
            sync_deletions_limited_feedback(perm(x), partial(y, int(x.size())), d));
      },
      py::arg("x"), py::arg("y"), py::arg("d"));
  m.def(
      "sync_insertions_oneway",
      [](const std::vector<int>& x, const std::vector<int>& y, int d) {
        return outcome_dict(sync_insertions_oneway(partial(x, int(y.size())), perm(y), d));
      },
      py::arg("x"), py::arg("y"), py::arg("d"));
  m.def(
      "sync_block_deletion",
      [](const std::vector<int>& x, const std::vector<int>& y, int d) {
        return outcome_dict(sync_block_deletion(perm(x), partial(y, int(x.size())), d));
      },
      py::arg("x"), py::arg("y"), py::arg("d"));
  m.def(
      "sync_translocation",
      [](const std::vector<int>& x, const std::vector<int>& y) {
        return outcome_dict(sync_translocation(perm(x), perm(y)));
      },
      py::arg("x"), py::arg("y"));
  m.def(
      "sync_transposition_oneway",
      [](const std::vector<int>& x, const std::vector<int>& y) {
        return outcome_dict(sync_transposition_oneway(perm(x), perm(y)));
      },
      py::arg("x"), py::arg("y"));
  m.def(
      "anchor_transposition_rounds",
      [](const std::vector<int>& x, int a, int b, uint64_t seed) {
        Rng rng(seed);
        return anchor_transposition_rounds(perm(x), Transposition{a, b}, rng);
      },
      py::arg("x"), py::arg("a"), py::arg("b"), py::arg("seed") = 1,
      "Probes until one of the two swapped positions is hit; returns the count.");

  // --- harness ----------------------------------------------------------------
  m.def(
      "run_experiment",
      [](const std::string& protocol, int n, int d, long long trials, uint64_t seed,
         const std::string& accounting) {
        const auto p = protocol_from_string(protocol);
        if (!p) throw std::invalid_argument("unknown protocol: " + protocol);
        ExperimentConfig cfg;
        cfg.protocol = *p;
        cfg.n = n;
        cfg.d = d;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.accounting = accounting_from(accounting);
        const std::string report = to_json(run_experiment(cfg));
        return py::module_::import("json").attr("loads")(report);
      },
      py::arg("protocol"), py::arg("n"), py::arg("d") = 0, py::arg("trials") = 1000,
      py::arg("seed") = 1, py::arg("accounting") = "both",
      "Monte-Carlo run; returns the full report as nested dicts.");
  m.def(
      "reference_value",
      [](const std::string& kind, int n, int d) {
        const auto k = bound_kind_from_string(kind);
        if (!k) throw std::invalid_argument("unknown reference: " + kind);
        const BoundValue v = bound(*k, n, d);
        return py::make_tuple(v.mean, v.variance ? py::object(py::float_(*v.variance))
                                                 : py::object(py::none()));
      },
      py::arg("kind"), py::arg("n"), py::arg("d") = 0,
      "Closed-form reference (mean, variance-or-None) for one metric.");
  m.def(
      "verify",
      [](const std::string& suite, int n_max) {
        py::list out;
        for (const SuiteCheck& c : verify_small_n(suite, n_max)) {
          py::dict row;
          row["property"] = c.property;
          row["passed"] = c.pass;
          row["detail"] = c.detail;
          out.append(row);
        }
        return out;
      },
      py::arg("suite") = "all", py::arg("n_max") = 6,
      "Small-instance property suites; returns one row per check.");
}

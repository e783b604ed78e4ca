#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "braidwalk/bfs.hpp"
#include "braidwalk/boundary.hpp"
#include "braidwalk/drift.hpp"
#include "braidwalk/free_product.hpp"
#include "braidwalk/graphs.hpp"
#include "braidwalk/montecarlo.hpp"

namespace py = pybind11;
using namespace braidwalk;

namespace {

GroupContext ctx_from(const std::string& family, int k) {
  if (family == "b3") return GroupContext::b3();
  if (family == "b3z") return GroupContext::b3_mod_z();
  if (family == "ak") return GroupContext::ak(k);
  if (family == "akz") return GroupContext::ak_mod_z(k);
  throw DomainError("unknown group family " + family);
}

StepDistribution nu_from(const std::string& family, double p) {
  if (family == "uniform") return StepDistribution::uniform();
  if (family == "inverse-symmetric") return StepDistribution::inverse_symmetric(p);
  if (family == "positive-symmetric") return StepDistribution::positive_symmetric(p);
  throw DomainError("unknown step family " + family);
}

boundary::RTAutomaton automaton_from(const std::string& family, double p) {
  auto qv = green::solve_q(nu_from(family, p));
  return boundary::build_automaton(qv, boundary::exact_R_from_q(qv));
}

py::dict value_dict(const std::optional<drift::DriftValue>& v) {
  py::dict d;
  if (!v) return d;
  d["value"] = v->value;
  d["method"] = v->method == drift::Method::ClosedForm ? "closed-form"
                : v->method == drift::Method::Solver   ? "solver"
                                                       : "monte-carlo";
  d["se"] = v->se;
  return d;
}

py::dict report_dict(const drift::DriftReport& rep) {
  py::dict d;
  d["family"] = rep.family;
  d["p"] = rep.p;
  d["k"] = rep.k;
  d["gamma_sigma"] = value_dict(rep.gamma_sigma);
  d["gamma_delta"] = value_dict(rep.gamma_delta);
  d["gamma_splus"] = value_dict(rep.gamma_splus);
  d["gamma"] = value_dict(rep.gamma);
  return d;
}

std::vector<Syllable> word_from_indices(const std::vector<int>& ts) {
  std::vector<Syllable> w;
  for (int t : ts) w.push_back(boundary::t_syllable(t));
  return w;
}

graphs::LabeledGraph ball_from(const std::string& kind, int k, int radius) {
  if (kind == "b3z") return graphs::cayley_ball(GroupContext::b3_mod_z(), radius);
  if (kind == "akz") return graphs::cayley_ball(GroupContext::ak_mod_z(k), radius);
  if (kind == "schreier") return graphs::schreier_ball(k, radius);
  if (kind == "free-product") return graphs::fp_cayley_ball(k, radius);
  throw DomainError("unknown graph kind " + kind);
}

}  // namespace

PYBIND11_MODULE(_braidwalk, m) {
  m.doc() = "Garside normal forms and random-walk asymptotics on B3 and "
            "dihedral Artin groups";

  py::register_exception<DomainError>(m, "DomainError");

  py::class_<GarsideNormalForm>(m, "NormalForm")
      .def("__repr__",
           [](const GarsideNormalForm& x) {
             return "NormalForm(" + x.to_string() + ")";
           })
      .def("__str__", &GarsideNormalForm::to_string)
      .def("__eq__", [](const GarsideNormalForm& x,
                        const GarsideNormalForm& y) { return x == y; })
      .def("__mul__", &multiply)
      .def("key", &GarsideNormalForm::key)
      .def_property_readonly("delta_exp", &GarsideNormalForm::delta_exp)
      .def_property_readonly("letter_count", &GarsideNormalForm::letter_count)
      .def_property_readonly("syllable_count", &GarsideNormalForm::syllable_count)
      .def_property_readonly("is_identity", &GarsideNormalForm::is_identity)
      .def("syllables",
           [](const GarsideNormalForm& x) {
             std::vector<std::pair<int, int>> out;
             for (auto s : x.syllables()) out.emplace_back(s.first, s.length);
             return out;
           })
      .def("inverse", [](const GarsideNormalForm& x) { return inverse(x); })
      .def("iota", [](const GarsideNormalForm& x) { return iota(x); })
      .def("geodesic_length",
           [](const GarsideNormalForm& x) { return geodesic_length(x); });

  m.def(
      "normal_form",
      [](const std::string& word, const std::string& family, int k) {
        return normal_form(word, ctx_from(family, k));
      },
      py::arg("word"), py::arg("family") = "b3z", py::arg("k") = 3,
      "Normal form of a word in the letters a, b, A, B.");
  m.def("project_mod_center", &project_mod_center);
  m.def("burau_oracle", &mc::burau_oracle, py::arg("w1"), py::arg("w2"),
        py::arg("mod_center") = true,
        "Equality of two generator words via the matrix representation.");
  m.def(
      "bfs_distances",
      [](const std::string& family, int radius, int k) {
        std::map<std::string, int> out;
        for (auto& [key, d] : bfs_distances(ctx_from(family, k), radius))
          out[key] = d;
        return out;
      },
      py::arg("family") = "b3z", py::arg("radius") = 6, py::arg("k") = 3);

  m.def("drift_inverse_symmetric",
        [](double p) { return report_dict(drift::drift_inverse_symmetric(p)); });
  m.def("drift_positive_symmetric",
        [](double p) { return report_dict(drift::drift_positive_symmetric(p)); });
  m.def("drift_simple_ak",
        [](int k) { return report_dict(drift::drift_simple_Ak(k)); });
  m.def(
      "estimate_drifts",
      [](const std::string& family, double p, int n, int trials, uint64_t seed,
         int k) {
        auto ctx = family == "simple-ak" ? GroupContext::ak(k) : GroupContext::b3();
        auto nu = family == "simple-ak" ? StepDistribution::uniform()
                                        : nu_from(family, p);
        return report_dict(mc::estimate_drifts(nu, ctx, n, trials, seed));
      },
      py::arg("family"), py::arg("p") = 0.25, py::arg("n") = 2000,
      py::arg("trials") = 200, py::arg("seed") = 1, py::arg("k") = 3);
  m.def("fp_drift",
        [](int k, double p) {
          return fp::fp_drift(k, fp::FPMeasure::factor_symmetric(p));
        },
        py::arg("k") = 3, py::arg("p") = 0.25);

  m.def(
      "solve_q",
      [](const std::string& family, double p) {
        auto qv = green::solve_q(nu_from(family, p));
        py::dict d;
        d["q"] = std::vector<double>(qv.q.begin(), qv.q.end());
        d["q_hat_1"] = qv.q_hat_1;
        d["q_hat_delta"] = qv.q_hat_delta;
        return d;
      },
      py::arg("family") = "uniform", py::arg("p") = 0.25);
  m.def(
      "green_function",
      [](const std::string& family, double p,
         const std::vector<std::string>& targets) {
        auto qv = green::solve_q(nu_from(family, p));
        auto ctx = GroupContext::b3_mod_z();
        std::vector<GarsideNormalForm> nf;
        for (const auto& w : targets) nf.push_back(normal_form(w, ctx));
        auto rep = green::green_function(qv, nf);
        py::dict d;
        d["Q_delta"] = rep.Q_delta;
        d["Gamma_1"] = rep.Gamma_1;
        d["Q_bar_1"] = rep.Q_bar_1;
        py::list table;
        for (size_t i = 0; i < rep.table.size(); ++i) {
          py::dict e;
          e["target"] = targets[i];
          e["Q"] = rep.table[i].Q;
          e["Gamma"] = rep.table[i].Gamma;
          table.append(e);
        }
        d["table"] = table;
        return d;
      },
      py::arg("family") = "uniform", py::arg("p") = 0.25,
      py::arg("targets") = std::vector<std::string>{});

  m.def(
      "exact_R",
      [](const std::string& family, double p) {
        auto R = boundary::exact_R_from_q(green::solve_q(nu_from(family, p)));
        return std::vector<double>(R.begin(), R.end());
      },
      py::arg("family") = "uniform", py::arg("p") = 0.25,
      "First-syllable law of the harmonic measure, T order a, b, ab, ba.");
  m.def(
      "cylinder_measure",
      [](const std::string& family, double p, const std::vector<int>& word) {
        return boundary::cylinder_measure(automaton_from(family, p),
                                          word_from_indices(word));
      },
      py::arg("family"), py::arg("p"), py::arg("word"),
      "Harmonic measure of a cylinder, word given by T indices.");
  m.def(
      "sample_boundary",
      [](const std::string& family, double p, int length, uint64_t seed) {
        auto aut = automaton_from(family, p);
        auto xi = boundary::sample_boundary(aut, length, seed);
        std::vector<int> out;
        for (auto s : xi.syllables) out.push_back(boundary::t_index(s));
        return out;
      },
      py::arg("family"), py::arg("p"), py::arg("length") = 32,
      py::arg("seed") = 1);
  m.def(
      "rn_derivative",
      [](const std::string& family, double p, const std::string& u,
         uint64_t seed, double eps) {
        auto aut = automaton_from(family, p);
        auto xi = boundary::sample_boundary(aut, 8, seed);
        auto cv = boundary::rn_derivative(
            aut, normal_form(u, GroupContext::b3_mod_z()), xi, eps);
        py::dict d;
        d["value"] = cv.value;
        d["half_width"] = cv.half_width;
        d["n_used"] = cv.n_used;
        return d;
      },
      py::arg("family"), py::arg("p"), py::arg("u"), py::arg("seed") = 1,
      py::arg("eps") = 1e-10,
      "Certified boundary derivative of u at a sampled boundary point.");
  m.def(
      "entropy",
      [](const std::string& family, double p, int samples, double eps,
         uint64_t seed) {
        auto nu = nu_from(family, p);
        auto rep = boundary::entropy(automaton_from(family, p), nu, samples,
                                     eps, seed);
        py::dict d;
        d["value"] = rep.value;
        d["stat_se"] = rep.stat_se;
        d["bias_bound"] = rep.bias_bound;
        d["n_samples"] = rep.n_samples;
        d["seed"] = rep.seed;
        return d;
      },
      py::arg("family") = "uniform", py::arg("p") = 0.25,
      py::arg("samples") = 1000, py::arg("eps") = 1e-9, py::arg("seed") = 1);

  m.def(
      "edge_list",
      [](const std::string& kind, int k, int radius) {
        return graphs::edge_list(ball_from(kind, k, radius));
      },
      py::arg("kind") = "b3z", py::arg("k") = 3, py::arg("radius") = 4);
  m.def(
      "wl_hash",
      [](const std::string& kind, int k, int radius) {
        return graphs::wl_hash(ball_from(kind, k, radius));
      },
      py::arg("kind") = "b3z", py::arg("k") = 3, py::arg("radius") = 4,
      "Color-refinement hash of the unlabelled ball.");
}

#include "qtransfer/harness.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qtransfer;

namespace {

ChainSpec chain(int n, double j0) {
  ChainSpec spec;
  spec.n_total = n;
  spec.j0 = j0;
  spec.validate();
  return spec;
}

ReceiverState state_from(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != 8 || rho.cols() != 8) throw std::invalid_argument("expected an 8x8 matrix");
  ReceiverState state;
  state.rho = rho;
  return state;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "GHZ-state transfer on XX spin chains";

  py::enum_<Verdict>(m, "Verdict")
      .value("biseparable_or_unknown", Verdict::biseparable_or_unknown)
      .value("w_or_ghz", Verdict::w_or_ghz)
      .value("ghz", Verdict::ghz);

  py::class_<EntanglementRecord>(m, "Record")
      .def_readonly("time", &EntanglementRecord::time)
      .def_readonly("c12", &EntanglementRecord::c12)
      .def_readonly("c13", &EntanglementRecord::c13)
      .def_readonly("c23", &EntanglementRecord::c23)
      .def_readonly("c13_assist", &EntanglementRecord::c13_assist)
      .def_readonly("neg_1_23", &EntanglementRecord::neg_1_23)
      .def_readonly("neg_2_13", &EntanglementRecord::neg_2_13)
      .def_readonly("neg_3_12", &EntanglementRecord::neg_3_12)
      .def_readonly("n3", &EntanglementRecord::n3)
      .def_readonly("ghz_witness", &EntanglementRecord::ghz_witness)
      .def_readonly("w_witness", &EntanglementRecord::w_witness)
      .def_readonly("gmn", &EntanglementRecord::gmn)
      .def_readonly("verdict", &EntanglementRecord::verdict)
      .def("__repr__", [](const EntanglementRecord& r) {
        return "<Record t=" + std::to_string(r.time) + " n3=" + std::to_string(r.n3) + ">";
      });

  m.def("couplings", [](int n, double j0) { return build_couplings(chain(n, j0)).couplings; },
        py::arg("n") = 19, py::arg("j0") = 0.01);

  m.def(
      "spectrum",
      [](int n, double j0) {
        const SingleParticleSpectrum sp = diagonalize(build_couplings(chain(n, j0)));
        return py::make_tuple(sp.omegas, sp.modes);
      },
      py::arg("n") = 19, py::arg("j0") = 0.01,
      "Single-particle energies and modes (column k is mode k).");

  m.def(
      "frequencies",
      [](int n, double j0) {
        const PerturbativeFrequencies f = perturbative_frequencies(
            diagonalize(build_couplings(chain(n, j0))), chain(n, j0));
        py::dict d;
        d["omega5"] = f.omega5;
        d["omega6"] = f.omega6;
        d["omega7"] = f.omega7;
        d["t_slow"] = f.t_slow;
        d["t_fast"] = f.t_fast;
        d["tau_estimate"] = f.tau_estimate;
        return d;
      },
      py::arg("n") = 19, py::arg("j0") = 0.01);

  m.def(
      "receiver_density",
      [](int n, double j0, double t) -> Eigen::MatrixXcd {
        const SingleParticleSpectrum sp = diagonalize(build_couplings(chain(n, j0)));
        return receiver_density(amplitude_table(sp, t)).rho;
      },
      py::arg("n"), py::arg("j0"), py::arg("t"), "8x8 receiver density matrix at time t.");

  m.def("evaluate", [](const Eigen::MatrixXcd& rho, double t) {
    return evaluate_record(state_from(rho), t);
  }, py::arg("rho"), py::arg("t") = 0.0);

  m.def(
      "evolve",
      [](int n, double j0, std::optional<double> t_min, std::optional<double> t_max,
         std::optional<int> steps, bool gmn, int workers) {
        RunConfig config;
        config.chain = chain(n, j0);
        config.t_min = t_min;
        config.t_max = t_max;
        config.steps = steps;
        config.gmn = gmn;
        config.workers = workers;
        EvolveResult result;
        {
          py::gil_scoped_release release;
          result = evolve_run(config);
        }
        if (!result.error.empty()) throw std::runtime_error(result.error);
        return result.records;
      },
      py::arg("n") = 19, py::arg("j0") = 0.01, py::arg("t_min") = py::none(),
      py::arg("t_max") = py::none(), py::arg("steps") = py::none(), py::arg("gmn") = false,
      py::arg("workers") = 0);

  m.def(
      "solve_gmn",
      [](const Eigen::MatrixXcd& rho, double tolerance) {
        GmnProblem problem;
        problem.rho = state_from(rho).rho;
        problem.tolerance = tolerance;
        const GmnSolution s = solve_gmn(problem);
        const CertificateReport cert = check_certificate(s, problem);
        py::dict d;
        d["gmn"] = s.gmn;
        d["optimum"] = s.optimum;
        d["dual_bound"] = s.dual_bound;
        d["gap"] = s.gap;
        d["iterations"] = s.iterations;
        d["status"] = to_string(s.status);
        d["witness"] = Eigen::MatrixXcd(s.witness);
        d["certified"] = cert.all_passed();
        return d;
      },
      py::arg("rho"), py::arg("tolerance") = 1e-7);

  m.def(
      "validate",
      [](int n, double j0, int times, double tolerance) {
        ValidateOptions options;
        options.chain = chain(n, j0);
        options.times = times;
        options.tolerance = tolerance;
        const ValidationReport r = validate_run(options);
        py::dict checks;
        for (const auto& c : r.checks) checks[py::str(c.name)] = py::make_tuple(c.passed, c.residual);
        py::dict d;
        d["passed"] = r.passed();
        d["max_density_residual"] = r.max_density_residual;
        d["checks"] = checks;
        return d;
      },
      py::arg("n") = 11, py::arg("j0") = 0.05, py::arg("times") = 64, py::arg("tolerance") = 1e-10);

  m.def(
      "sweep",
      [](int n, const std::vector<double>& j0s) {
        RunConfig config;
        config.chain.n_total = n;
        const SweepResult r = sweep_j0(config, j0s);
        py::list rows;
        for (const auto& row : r.rows) {
          py::dict d;
          d["j0"] = row.j0;
          d["tau"] = row.tau;
          d["max_n3"] = row.max_n3;
          d["perturbative"] = row.perturbative;
          rows.append(d);
        }
        py::dict out;
        out["rows"] = rows;
        out["exponent"] = r.fit ? py::cast(r.fit->exponent) : py::none();
        return out;
      },
      py::arg("n") = 23, py::arg("j0s") = std::vector<double>{0.01, 0.02, 0.03, 0.04, 0.05});
}

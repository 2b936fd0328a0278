// pybind11 bindings exposing the main operations of the toolbox.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinestim/acceptance.hpp"
#include "spinestim/montecarlo.hpp"
#include "spinestim/optimize.hpp"
#include "spinestim/strategies.hpp"

namespace py = pybind11;
using namespace spinestim;

namespace {

SpinQuantum spin_from_obj(const py::object& obj) {
    if (py::isinstance<py::str>(obj))
        return SpinQuantum::parse(obj.cast<std::string>());
    double v = obj.cast<double>();
    double tj = 2.0 * v;
    if (std::abs(tj - std::round(tj)) > 1e-9)
        throw py::value_error("j must be a half-integer");
    return SpinQuantum(static_cast<int>(std::round(tj)));
}

py::dict report_to_dict(const SensitivityReport& r) {
    py::dict d;
    d["strategy"] = strategy_name(r.strategy);
    d["two_j"] = r.j.two_j;
    d["j"] = r.j.j();
    d["delta_phi_total"] = r.delta_phi_total;
    if (r.per_phase)
        d["per_phase"] = py::make_tuple(r.per_phase->first, r.per_phase->second);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Two-phase spin-rotation estimation toolbox (C++ core)";

    py::register_exception<DomainError>(m, "DomainError");

    // spin operators ---------------------------------------------------
    m.def(
        "spin_ops",
        [](const py::object& j) {
            SpinOps ops = make_spin_ops(spin_from_obj(j));
            return py::make_tuple(ops.x.mat, ops.y.mat, ops.z.mat);
        },
        py::arg("j"), "Jx, Jy, Jz matrices in the Jz eigenbasis (m = j..-j)");

    m.def(
        "eigenbasis",
        [](const py::object& j, const std::string& axis) {
            auto basis = eigenbasis(spin_from_obj(j), axis_from_string(axis));
            py::list out;
            for (const auto& v : basis) out.append(v);
            return out;
        },
        py::arg("j"), py::arg("axis"));

    // states -----------------------------------------------------------
    m.def(
        "state",
        [](const std::string& spec, const py::object& j) {
            std::optional<SpinQuantum> jq;
            if (!j.is_none()) jq = spin_from_obj(j);
            StateVector s = parse_state_spec(spec, jq);
            return py::make_tuple(s.amp, s.space.system_dim,
                                  s.space.ancilla_dim);
        },
        py::arg("spec"), py::arg("j") = py::none(),
        "Amplitudes plus (system_dim, ancilla_dim) for a state spec string");

    // qfi ----------------------------------------------------------------
    auto as_state = [](const Vector& amp, int system_dim, int ancilla_dim) {
        StateVector s{CompositeSpace{system_dim, ancilla_dim}, amp};
        s.check_norm(1e-10);
        return s;
    };

    m.def(
        "qfi_analytic",
        [as_state](const Vector& amp, int system_dim, int ancilla_dim,
                   double phi_x, double phi_y, const std::string& order) {
            QfiOrder ord = order == "first" ? QfiOrder::FirstCorrected
                                            : QfiOrder::Zeroth;
            QfiMatrix h = qfi_matrix_analytic(
                as_state(amp, system_dim, ancilla_dim),
                PhasePair{phi_x, phi_y}, ord);
            py::dict d;
            d["h"] = h.h;
            d["achievability_residual"] = h.achievability_residual;
            return d;
        },
        py::arg("amplitudes"), py::arg("system_dim"),
        py::arg("ancilla_dim") = 0, py::arg("phi_x") = 0.0,
        py::arg("phi_y") = 0.0, py::arg("order") = "zeroth");

    m.def(
        "qfi_numeric",
        [as_state](const Vector& amp, int system_dim, int ancilla_dim,
                   double phi_x, double phi_y, double step) {
            QfiMatrix h = qfi_matrix_numeric(
                as_state(amp, system_dim, ancilla_dim),
                PhasePair{phi_x, phi_y}, step);
            py::dict d;
            d["h"] = h.h;
            d["achievability_residual"] = h.achievability_residual;
            d["step_warning"] = h.step_warning;
            return d;
        },
        py::arg("amplitudes"), py::arg("system_dim"),
        py::arg("ancilla_dim") = 0, py::arg("phi_x") = 0.0,
        py::arg("phi_y") = 0.0, py::arg("step") = 1e-4);

    m.def(
        "crb_total_sensitivity",
        [as_state](const Vector& amp, int system_dim, int ancilla_dim) {
            QfiMatrix h = qfi_matrix_analytic(
                as_state(amp, system_dim, ancilla_dim), PhasePair{});
            return crb(h).total_sensitivity;
        },
        py::arg("amplitudes"), py::arg("system_dim"),
        py::arg("ancilla_dim") = 0);

    // strategies --------------------------------------------------------
    m.def("joint_sensitivity", [](const py::object& j) {
        return report_to_dict(joint_sensitivity(spin_from_obj(j)));
    });
    m.def("sequential_sensitivity", [](const py::object& j) {
        return report_to_dict(sequential_sensitivity(spin_from_obj(j)));
    });
    m.def("spin_sequential_sensitivity", [](const py::object& j) {
        return report_to_dict(spin_sequential_sensitivity(spin_from_obj(j)));
    });
    m.def("sql_sensitivity", [](const py::object& j) {
        return report_to_dict(sql_sensitivity(spin_from_obj(j)));
    });
    m.def(
        "scan",
        [](const py::object& jmin, const py::object& jmax) {
            auto rows = scan(spin_from_obj(jmin), spin_from_obj(jmax),
                             {Strategy::Joint, Strategy::Sequential,
                              Strategy::SequentialSpin, Strategy::Sql});
            py::list out;
            for (const auto& row : rows) {
                py::dict d;
                d["j"] = row.j.j();
                d["strategy"] = strategy_name(row.strategy);
                d["delta_phi"] = row.delta_phi;
                out.append(d);
            }
            return out;
        },
        py::arg("jmin"), py::arg("jmax"));

    // squeezing ----------------------------------------------------------
    m.def(
        "spin_squeezing",
        [as_state](const Vector& amp, int system_dim, const std::string& axis) {
            SqueezingReport rep = is_spin_squeezed(
                as_state(amp, system_dim, 0), axis_from_string(axis));
            py::dict d;
            d["msd"] = py::make_tuple(rep.msd.x(), rep.msd.y(), rep.msd.z());
            d["delta_phi"] = rep.delta_phi;
            d["sql"] = rep.sql;
            d["squeezed"] = rep.squeezed;
            return d;
        },
        py::arg("amplitudes"), py::arg("system_dim"), py::arg("axis") = "x");

    m.def(
        "two_mode_squeezing",
        [](const Vector& amp, const py::object& j) {
            SpinQuantum jq = spin_from_obj(j);
            StateVector s{CompositeSpace{jq.dim() * jq.dim(), 0}, amp};
            TwoModeReport rep = is_two_mode_squeezed(s, jq, jq);
            py::dict d;
            d["var_x_minus"] = rep.var_x_minus;
            d["var_y_plus"] = rep.var_y_plus;
            d["z_plus_mean"] = rep.z_plus_mean;
            d["two_mode_squeezed"] = rep.two_mode_squeezed;
            return d;
        },
        py::arg("amplitudes"), py::arg("j"));

    // montecarlo ----------------------------------------------------------
    m.def(
        "simulate",
        [](const py::object& j, const std::string& probe_spec, double phi_x,
           double phi_y, const std::string& estimator, int m_total,
           std::uint64_t seed, int repetitions) {
            SpinQuantum jq = spin_from_obj(j);
            ExperimentConfig cfg{jq, parse_state_spec(probe_spec, jq),
                                 PhasePair{phi_x, phi_y}, m_total, seed, 0.5,
                                 repetitions};
            ExperimentResult res = estimator == "ghz"
                                       ? estimate_sequential_ghz(cfg)
                                       : estimate_sequential_spin(cfg);
            py::dict d;
            d["estimates"] = py::make_tuple(res.estimates.first,
                                            res.estimates.second);
            d["empirical_variances"] =
                py::make_tuple(res.empirical_variances.first,
                               res.empirical_variances.second);
            d["crb_prediction"] = py::make_tuple(res.crb_prediction.first,
                                                 res.crb_prediction.second);
            d["moment_prediction"] =
                py::make_tuple(res.moment_prediction.first,
                               res.moment_prediction.second);
            return d;
        },
        py::arg("j"), py::arg("probe"), py::arg("phi_x") = 0.0,
        py::arg("phi_y") = 0.0, py::arg("estimator") = "spin",
        py::arg("m_total") = 10000, py::arg("seed") = 0,
        py::arg("repetitions") = 400);

    // optimize ------------------------------------------------------------
    m.def(
        "minimize_trace_inverse",
        [](const py::object& j, int ancilla_dim, int restarts,
           std::uint64_t seed) {
            OptimizeConfig cfg{spin_from_obj(j)};
            cfg.ancilla_dim = ancilla_dim;
            cfg.restarts = restarts;
            cfg.seed = seed;
            OptimizeResult res = minimize_trace_inverse(cfg);
            py::dict d;
            d["best_value"] = res.best_value;
            d["best_state"] = res.best_state.amp;
            d["converged"] = res.converged;
            return d;
        },
        py::arg("j"), py::arg("ancilla_dim") = 0, py::arg("restarts") = 8,
        py::arg("seed") = 0);

    // verification ----------------------------------------------------------
    m.def("verify", [] {
        auto results = acceptance::run_all();
        py::list out;
        for (const auto& r : results) {
            py::dict d;
            d["id"] = r.id;
            d["name"] = r.name;
            d["pass"] = r.pass;
            d["detail"] = r.detail;
            out.append(d);
        }
        return out;
    });
}

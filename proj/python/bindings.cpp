// Copyright 2026 The teamdyn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <vector>

#include "teamdyn/analysis.hpp"
#include "teamdyn/boolfn.hpp"
#include "teamdyn/csv.hpp"
#include "teamdyn/dynamics.hpp"
#include "teamdyn/errors.hpp"
#include "teamdyn/game.hpp"
#include "teamdyn/integrator.hpp"
#include "teamdyn/oracle.hpp"

namespace py = pybind11;

namespace teamdyn::python {
namespace {

using Array = py::array_t<double>;

Array to_array(const std::vector<double>& v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Array states_array(const Trajectory& t) {
  const auto rows = static_cast<py::ssize_t>(t.size());
  const auto cols = static_cast<py::ssize_t>(t.n() + t.m());
  Array out({rows, cols});
  auto view = out.mutable_unchecked<2>();
  for (py::ssize_t k = 0; k < rows; ++k) {
    const auto s = t.state(static_cast<std::size_t>(k));
    for (py::ssize_t i = 0; i < cols; ++i) view(k, i) = s[i];
  }
  return out;
}

Array utility_array(const Trajectory& t) {
  Array out(static_cast<py::ssize_t>(t.size()));
  double* data = out.mutable_data();
  for (std::size_t k = 0; k < t.size(); ++k) data[k] = t.utility(k);
  return out;
}

SystemState make_state(std::vector<double> x, std::vector<double> y) {
  return SystemState{ProductDistribution(std::move(x)),
                     ProductDistribution(std::move(y))};
}

void bind_errors(py::module_& m) {
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_OverflowError);
  py::register_exception<IntegrationError>(m, "IntegrationError",
                                           PyExc_RuntimeError);
}

void bind_boolfn(py::module_& m) {
  py::enum_<Builtin>(m, "Builtin")
      .value("XOR", Builtin::kXor)
      .value("OR", Builtin::kOr)
      .value("AND", Builtin::kAnd)
      .value("MAJORITY", Builtin::kMajority)
      .value("IDENTITY", Builtin::kIdentity);

  py::class_<BooleanFunction>(m, "BooleanFunction")
      .def(py::init<int, std::vector<std::uint8_t>>(), py::arg("arity"),
           py::arg("table"))
      .def_property_readonly("arity", &BooleanFunction::arity)
      .def_property_readonly("table", &BooleanFunction::table)
      .def("__call__",
           [](const BooleanFunction& f, const std::vector<std::uint8_t>& bits) {
             if (bits.size() != static_cast<std::size_t>(f.arity())) {
               throw InputError("assignment length does not match arity");
             }
             return f.eval(bits);
           })
      .def("__str__", &BooleanFunction::to_string)
      .def("__repr__", [](const BooleanFunction& f) {
        return "BooleanFunction('" + f.to_string() + "')";
      })
      .def(py::self == py::self)
      .def_static("parse", &BooleanFunction::parse, py::arg("text"))
      .def_static("load", &BooleanFunction::load, py::arg("path"))
      .def("save", &BooleanFunction::save, py::arg("path"));

  m.def("make_builtin", &make_builtin, py::arg("kind"), py::arg("arity"));
  m.def("builtin", [](const std::string& name, int arity) {
    return make_builtin(parse_builtin(name), arity);
  }, py::arg("name"), py::arg("arity"), "Builtin function by name, e.g. 'xor'.");

  py::class_<ConditionalPair>(m, "ConditionalPair")
      .def_readonly("zero", &ConditionalPair::zero)
      .def_readonly("one", &ConditionalPair::one)
      .def("difference", &ConditionalPair::difference)
      .def("__repr__", [](const ConditionalPair& c) {
        return "ConditionalPair(zero=" + format_double(c.zero) +
               ", one=" + format_double(c.one) + ")";
      });

  m.def("expectation", [](const BooleanFunction& f, std::vector<double> x) {
    if (x.size() != static_cast<std::size_t>(f.arity())) {
      throw InputError("marginal count does not match arity");
    }
    return expectation(f, x);
  }, py::arg("f"), py::arg("x"));
  m.def("conditional_pair",
        [](const BooleanFunction& f, std::vector<double> x, int gene) {
          return conditional_pair(f, x, gene);
        }, py::arg("f"), py::arg("x"), py::arg("gene"));
  m.def("conditional_pairs", [](const BooleanFunction& f, std::vector<double> x) {
    return conditional_pairs(f, x);
  }, py::arg("f"), py::arg("x"));
  m.def("output_rate", [](const BooleanFunction& f, std::vector<double> x) {
    return output_rate(f, x);
  }, py::arg("f"), py::arg("x"));
}

void bind_game(py::module_& m) {
  py::class_<PayoffKernel>(m, "PayoffKernel")
      .def(py::init([](double a, double b, double c, double d) {
             return PayoffKernel{a, b, c, d};
           }),
           py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
      .def_readwrite("a", &PayoffKernel::a)
      .def_readwrite("b", &PayoffKernel::b)
      .def_readwrite("c", &PayoffKernel::c)
      .def_readwrite("d", &PayoffKernel::d)
      .def_property_readonly("alpha", &PayoffKernel::alpha)
      .def("mixed", &PayoffKernel::mixed, py::arg("f"), py::arg("g"));
  m.def("matching_pennies", &matching_pennies);
  m.def("rescaled_matching_pennies", &rescaled_matching_pennies);

  py::enum_<Team>(m, "Team").value("A", Team::kA).value("B", Team::kB);

  py::class_<TeamGame>(m, "TeamGame")
      .def(py::init<BooleanFunction, BooleanFunction, const PayoffKernel&>(),
           py::arg("f"), py::arg("g"), py::arg("kernel") = matching_pennies())
      .def_property_readonly("f", &TeamGame::f)
      .def_property_readonly("g", &TeamGame::g)
      .def_property_readonly("kernel", &TeamGame::kernel)
      .def_property_readonly("alpha", &TeamGame::alpha)
      .def_property_readonly("p", &TeamGame::nash_p)
      .def_property_readonly("q", &TeamGame::nash_q)
      .def_property_readonly("value", &TeamGame::value)
      .def_property_readonly("n", &TeamGame::n)
      .def_property_readonly("m", &TeamGame::m)
      .def("__repr__", &TeamGame::describe);

  m.def("expected_team_utility",
        [](const TeamGame& g, std::vector<double> x, std::vector<double> y) {
          return expected_team_utility(g, x, y);
        }, py::arg("game"), py::arg("x"), py::arg("y"));
  m.def("conditional_agent_utilities",
        [](const TeamGame& g, std::vector<double> x, std::vector<double> y,
           Team team, int agent) {
          return conditional_agent_utilities(g, x, y, team, agent);
        }, py::arg("game"), py::arg("x"), py::arg("y"), py::arg("team"),
        py::arg("agent"));
}

void bind_dynamics(py::module_& m) {
  py::enum_<FieldKind>(m, "FieldKind")
      .value("RESCALED", FieldKind::kRescaled)
      .value("RAW", FieldKind::kRaw);
  py::enum_<Method>(m, "Method")
      .value("RK4", Method::kRk4)
      .value("DP45", Method::kDormandPrince45);
  py::enum_<Direction>(m, "Direction")
      .value("FORWARD", Direction::kForward)
      .value("BACKWARD", Direction::kBackward);

  py::class_<IntegratorConfig>(m, "IntegratorConfig")
      .def(py::init<>())
      .def(py::init([](Method method, double max_time, double sample_interval,
                       double abs_tol, double rel_tol, double step) {
             IntegratorConfig c;
             c.method = method;
             c.max_time = max_time;
             c.sample_interval = sample_interval;
             c.abs_tol = abs_tol;
             c.rel_tol = rel_tol;
             c.step = step;
             c.validate();
             return c;
           }),
           py::kw_only(), py::arg("method") = Method::kDormandPrince45,
           py::arg("max_time") = 100.0, py::arg("sample_interval") = 0.01,
           py::arg("abs_tol") = 1e-10, py::arg("rel_tol") = 1e-10,
           py::arg("step") = 1e-3)
      .def_readwrite("method", &IntegratorConfig::method)
      .def_readwrite("step", &IntegratorConfig::step)
      .def_readwrite("abs_tol", &IntegratorConfig::abs_tol)
      .def_readwrite("rel_tol", &IntegratorConfig::rel_tol)
      .def_readwrite("max_time", &IntegratorConfig::max_time)
      .def_readwrite("sample_interval", &IntegratorConfig::sample_interval)
      .def_readwrite("min_step", &IntegratorConfig::min_step);

  m.def("field",
        [](const TeamGame& g, std::vector<double> z, FieldKind kind) {
          return to_array(evaluate_field(g, kind, z));
        }, py::arg("game"), py::arg("z"), py::arg("kind") = FieldKind::kRescaled);
  m.def("field_scale", &field_scale, py::arg("game"), py::arg("kind"));
  m.def("subsystem_field", [](const BooleanFunction& f, std::vector<double> x) {
    return to_array(subsystem_field(f, x));
  }, py::arg("f"), py::arg("x"));

  py::class_<Trajectory>(m, "Trajectory")
      .def_property_readonly("n", &Trajectory::n)
      .def_property_readonly("m", &Trajectory::m)
      .def("__len__", &Trajectory::size)
      .def_property_readonly("t", [](const Trajectory& t) { return to_array(t.times()); })
      .def_property_readonly("states", &states_array)
      .def_property_readonly("f", [](const Trajectory& t) { return to_array(t.f_values()); })
      .def_property_readonly("g", [](const Trajectory& t) { return to_array(t.g_values()); })
      .def_property_readonly("uA", &utility_array);

  m.def("integrate",
        [](const TeamGame& g, std::vector<double> x, std::vector<double> y,
           const IntegratorConfig& config, FieldKind kind) {
          py::gil_scoped_release release;
          return integrate(g, make_state(std::move(x), std::move(y)), config, kind);
        }, py::arg("game"), py::arg("x"), py::arg("y"),
        py::arg("config") = IntegratorConfig{},
        py::arg("kind") = FieldKind::kRescaled);

  py::class_<SubsystemTrajectory>(m, "SubsystemTrajectory")
      .def("__len__", &SubsystemTrajectory::size)
      .def_property_readonly("t", [](const SubsystemTrajectory& s) { return to_array(s.times); })
      .def_property_readonly("f", [](const SubsystemTrajectory& s) { return to_array(s.f); })
      .def_property_readonly("r", [](const SubsystemTrajectory& s) { return to_array(s.r); })
      .def_property_readonly("states", [](const SubsystemTrajectory& s) {
        Array out({static_cast<py::ssize_t>(s.size()), static_cast<py::ssize_t>(s.n)});
        std::copy(s.states.begin(), s.states.end(), out.mutable_data());
        return out;
      });
  m.def("integrate_subsystem",
        [](const BooleanFunction& f, std::vector<double> x,
           const IntegratorConfig& config, Direction direction, double stop_rate) {
          return integrate_subsystem(f, ProductDistribution(std::move(x)), config,
                                     direction, stop_rate);
        }, py::arg("f"), py::arg("x"), py::arg("config") = IntegratorConfig{},
        py::arg("direction") = Direction::kForward, py::arg("stop_rate") = 0.0);
}

void bind_analysis(py::module_& m) {
  py::class_<FixedPointReport>(m, "FixedPointReport")
      .def_readonly("is_fixed", &FixedPointReport::is_fixed)
      .def_readonly("residual", &FixedPointReport::residual)
      .def_property_readonly("kinds", &FixedPointReport::kind_names)
      .def_property_readonly("weakly_stable", [](const FixedPointReport& r) {
        return std::string(stability_name(r.weakly_stable));
      });
  m.def("classify_fixed_point",
        [](const TeamGame& g, std::vector<double> z, double tol) {
          return classify_fixed_point(g, z, tol);
        }, py::arg("game"), py::arg("z"), py::arg("tol") = kFixedPointTol);

  py::class_<PeriodEstimate>(m, "PeriodEstimate")
      .def_readonly("period", &PeriodEstimate::period)
      .def_readonly("return_error", &PeriodEstimate::return_error)
      .def_readonly("crossings_used", &PeriodEstimate::crossings_used);
  m.def("detect_period",
        [](const TeamGame& g, std::vector<double> x, std::vector<double> y,
           const IntegratorConfig& config, FieldKind kind, double return_tol)
            -> std::optional<PeriodEstimate> {
          PeriodOptions options;
          options.field = kind;
          options.return_tol = return_tol;
          py::gil_scoped_release release;
          return detect_period(g, make_state(std::move(x), std::move(y)), config,
                               options).estimate;
        }, py::arg("game"), py::arg("x"), py::arg("y"),
        py::arg("config") = IntegratorConfig{},
        py::arg("kind") = FieldKind::kRescaled, py::arg("return_tol") = 1e-6,
        "Period of the orbit through (x, y), or None if none is found.");

  m.def("closed_form_H_single_gene", &closed_form_H_single_gene, py::arg("p"),
        py::arg("q"), py::arg("xi"), py::arg("zeta"));

  py::class_<AgentAverages>(m, "AgentAverages")
      .def_readonly("team", &AgentAverages::team)
      .def_readonly("agent", &AgentAverages::agent)
      .def_readonly("u0", &AgentAverages::u0)
      .def_readonly("u1", &AgentAverages::u1)
      .def_readonly("u_hat", &AgentAverages::u_hat);
  py::class_<TimeAverages>(m, "TimeAverages")
      .def_readonly("horizon", &TimeAverages::horizon)
      .def_readonly("f_bar", &TimeAverages::f_bar)
      .def_readonly("g_bar", &TimeAverages::g_bar)
      .def_readonly("utility_bar", &TimeAverages::utility_bar)
      .def_readonly("agents", &TimeAverages::agents)
      .def_property_readonly("profile", [](const TimeAverages& a) {
        return to_array(a.profile);
      });
  m.def("time_averages", &time_averages, py::arg("game"), py::arg("trajectory"),
        py::arg("use_integer_periods") = false, py::arg("period") = 0.0,
        py::arg("with_profile") = false);

  py::class_<CeCertificate>(m, "CeCertificate")
      .def_readonly("min_ce_slack", &CeCertificate::min_ce_slack)
      .def_readonly("min_cce_slack", &CeCertificate::min_cce_slack)
      .def_readonly("is_ce", &CeCertificate::is_ce)
      .def_readonly("is_cce", &CeCertificate::is_cce);
  m.def("certify_correlated_equilibrium",
        [](const TeamGame& g, std::vector<double> pi, double tol) {
          return certify_correlated_equilibrium(g, pi, tol);
        }, py::arg("game"), py::arg("pi"), py::arg("tol") = 1e-9);
}

void bind_oracle(py::module_& m) {
  auto o = m.def_submodule("oracle", "Brute-force enumeration references.");
  o.def("expectation", [](const BooleanFunction& f, std::vector<double> x) {
    return oracle::brute_expectation(f, x);
  }, py::arg("f"), py::arg("x"));
  o.def("expected_team_utility",
        [](const TeamGame& g, std::vector<double> x, std::vector<double> y) {
          return oracle::brute_expected_team_utility(g, x, y);
        }, py::arg("game"), py::arg("x"), py::arg("y"));
  o.def("field", [](const TeamGame& g, std::vector<double> z, FieldKind kind) {
    return to_array(oracle::brute_field(g, kind, z));
  }, py::arg("game"), py::arg("z"), py::arg("kind") = FieldKind::kRescaled);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Replicator dynamics of two-team zero-sum games.";
  bind_errors(m);
  bind_boolfn(m);
  bind_game(m);
  bind_dynamics(m);
  bind_analysis(m);
  bind_oracle(m);
}

}  // namespace teamdyn::python

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "deqt/config.hpp"
#include "deqt/entropy.hpp"
#include "deqt/error.hpp"
#include "deqt/experiment.hpp"
#include "deqt/qlearn.hpp"
#include "deqt/representation.hpp"
#include "deqt/stats.hpp"

namespace py = pybind11;
using namespace deqt;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Tables cross the boundary as (x, y, channel, action) arrays.
Array to_array(const QTable& t) {
  const QTableDims d = t.dims();
  Array out({d.width, d.height, d.channels, d.actions});
  auto view = out.mutable_unchecked<4>();
  for (int x = 0; x < d.width; ++x)
    for (int y = 0; y < d.height; ++y)
      for (int c = 0; c < d.channels; ++c)
        for (int a = 0; a < d.actions; ++a) view(x, y, c, a) = t.at(x, y, c, a);
  return out;
}

QTable from_array(const Array& in) {
  if (in.ndim() != 4) throw UsageError("Q-table array must have shape (width, height, channels, actions)");
  const QTableDims d{static_cast<int>(in.shape(0)), static_cast<int>(in.shape(1)), static_cast<int>(in.shape(2)),
                     static_cast<int>(in.shape(3))};
  QTable t(d, 0.0);
  auto view = in.unchecked<4>();
  for (int x = 0; x < d.width; ++x)
    for (int y = 0; y < d.height; ++y)
      for (int c = 0; c < d.channels; ++c)
        for (int a = 0; a < d.actions; ++a) t.at(x, y, c, a) = view(x, y, c, a);
  return t;
}

py::dict points_dict(const StoppingPoints& p) {
  py::dict d;
  d["t_earliest"] = p.t_earliest;
  d["t_latest"] = p.t_latest;
  d["t_max"] = p.t_max;
  d["t_final"] = p.t_final;
  return d;
}

py::dict summary_dict(const SampleSummary& s) {
  py::dict d;
  d["n"] = s.n;
  d["mean"] = s.mean;
  d["std"] = s.std;
  return d;
}

py::list series_channels(const EntropySeries& s) {
  py::list out;
  for (int k = 0; k < s.channel_count(); ++k) out.append(py::cast(s.channel(k)));
  return out;
}

py::dict test_stats_dict(const TestStats& s) {
  py::dict d;
  d["discounted_reward"] = summary_dict(s.discounted_reward);
  d["flags_collected"] = summary_dict(s.flags_collected);
  d["steps_successful"] = summary_dict(s.steps_successful);
  d["success_rate"] = s.success_rate;
  d["successes"] = s.successes;
  d["tests"] = s.tests;
  return d;
}

ExperimentConfig make_config(const std::string& setup, const py::dict& overrides) {
  ExperimentConfig c = preset(setup);
  for (const auto& [key, value] : overrides) apply_override(c, py::str(key), py::str(value));
  c.validate();
  return c;
}

constexpr TestingTime kTimes[] = {TestingTime::Earliest, TestingTime::Latest, TestingTime::Max, TestingTime::Final};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Differential entropy of Q-tables as a stopping signal for tabular Q-learning";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<ExperimentConfig>(m, "Config")
      .def(py::init(&make_config), py::arg("setup") = "Global-8-8", py::arg("overrides") = py::dict())
      .def("set", [](ExperimentConfig& c, const std::string& key, const py::object& value) {
        apply_override(c, key, py::str(value));
        c.validate();
      })
      .def("to_dict", [](const ExperimentConfig& c) {
        py::dict d;
        for (const auto& [k, v] : to_key_values(c)) d[py::str(k)] = v;
        return d;
      })
      .def("__repr__", [](const ExperimentConfig& c) { return format_config(c); });

  m.def("setup_names", &setup_names);

  m.def(
      "flag_zone",
      [](const ExperimentConfig& c) {
        std::vector<std::pair<int, int>> out;
        for (Position p : flag_zone(c.world)) out.emplace_back(p.x, p.y);
        return out;
      },
      py::arg("config"));

  m.def(
      "channel_count",
      [](const std::string& representation, int n_train_flags) {
        return channel_count({parse_representation_type(representation), n_train_flags});
      },
      py::arg("representation"), py::arg("n_train_flags") = 8);

  m.def(
      "encode_channel",
      [](const std::string& representation, int n_train_flags, int remaining, bool flag_at_pos, bool testing) {
        return encode_channel({parse_representation_type(representation), n_train_flags}, remaining, flag_at_pos,
                              testing ? Phase::Testing : Phase::Training);
      },
      py::arg("representation"), py::arg("n_train_flags"), py::arg("remaining"), py::arg("flag_at_pos"),
      py::arg("testing") = false);

  m.def(
      "boltzmann_probabilities",
      [](const std::vector<double>& qrow, double temperature) { return boltzmann_probabilities(qrow, temperature); },
      py::arg("qrow"), py::arg("temperature"));

  m.def(
      "histogram_entropy",
      [](const std::vector<double>& values, int bins, double degenerate_floor) {
        return histogram_entropy(values, {bins, degenerate_floor});
      },
      py::arg("values"), py::arg("bins") = 100, py::arg("degenerate_floor") = -20.0);

  m.def(
      "channel_entropies",
      [](const Array& table, int bins, bool state_max) {
        return channel_entropies(from_array(table), {bins, -20.0},
                                 state_max ? EntropyValues::StateMax : EntropyValues::StateAction);
      },
      py::arg("table"), py::arg("bins") = 100, py::arg("state_max") = false);

  m.def(
      "stopping_points",
      [](const std::vector<std::vector<double>>& channels, bool include_channel0) {
        if (channels.empty()) throw UsageError("need at least one channel");
        EntropySeries series(static_cast<int>(channels.size()));
        std::vector<double> row(channels.size());
        for (std::size_t e = 0; e < channels.front().size(); ++e) {
          for (std::size_t k = 0; k < channels.size(); ++k) row[k] = channels[k].at(e);
          series.append(row);
        }
        return points_dict(stopping_points(series, include_channel0));
      },
      py::arg("channels"), py::arg("include_channel0") = true);

  m.def(
      "train_run",
      [](const ExperimentConfig& c, std::uint64_t seed) {
        RunRecord r;
        {
          py::gil_scoped_release release;
          r = train_run(c, seed);
        }
        py::dict d;
        d["seed"] = r.seed;
        d["entropy"] = series_channels(r.series);
        d["entropy_sum"] = r.series.sum();
        d["points"] = points_dict(r.points);
        d["final_table"] = to_array(r.final_table);
        return d;
      },
      py::arg("config"), py::arg("seed"));

  m.def(
      "replay_to",
      [](const ExperimentConfig& c, std::uint64_t seed, int episode) {
        QTable t;
        {
          py::gil_scoped_release release;
          t = replay_to(c, seed, episode);
        }
        return to_array(t);
      },
      py::arg("config"), py::arg("seed"), py::arg("episode"));

  m.def(
      "run_tests",
      [](const Array& table, const ExperimentConfig& c, std::uint64_t seed) {
        const QTable t = from_array(table);
        RandomStream rng(seed, streams::kTesting);
        return test_stats_dict(run_tests(t, c, rng));
      },
      py::arg("table"), py::arg("config"), py::arg("seed"));

  m.def(
      "full_workflow",
      [](const ExperimentConfig& c, unsigned threads) {
        WorkflowReport report;
        {
          py::gil_scoped_release release;
          report = full_workflow(c, threads);
        }
        py::dict aggregate;
        for (TestingTime time : kTimes) {
          const AggregateStats& a = report.at(time);
          py::dict d;
          d["discounted_reward"] = summary_dict(a.discounted_reward);
          d["flags_collected"] = summary_dict(a.flags_collected);
          d["success_rate"] = summary_dict(a.success_rate);
          d["steps_successful"] = summary_dict(a.steps_successful);
          aggregate[py::str(to_string(time))] = d;
        }
        py::list runs;
        for (const RunOutcome& r : report.runs) {
          py::dict d;
          d["seed"] = r.seed;
          d["points"] = points_dict(r.points);
          d["entropy_sum"] = r.series.sum();
          py::dict tests;
          for (TestingTime time : kTimes) tests[py::str(to_string(time))] = test_stats_dict(r.tests[static_cast<int>(time)]);
          d["tests"] = tests;
          runs.append(d);
        }
        py::dict out;
        out["aggregate"] = aggregate;
        out["runs"] = runs;
        return out;
      },
      py::arg("config"), py::arg("threads") = 0);

  m.def(
      "welch_t_test",
      [](std::size_t n_a, double mean_a, double std_a, std::size_t n_b, double mean_b, double std_b, double alpha) {
        const TTestResult r = welch_t_test({n_a, mean_a, std_a}, {n_b, mean_b, std_b}, alpha);
        py::dict d;
        d["t"] = r.t_statistic;
        d["df"] = r.degrees_of_freedom;
        d["p"] = r.p_value;
        d["significant"] = r.significant;
        return d;
      },
      py::arg("n_a"), py::arg("mean_a"), py::arg("std_a"), py::arg("n_b"), py::arg("mean_b"), py::arg("std_b"),
      py::arg("alpha") = 0.05);
}

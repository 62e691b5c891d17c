#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "taskcode/cost.hpp"
#include "taskcode/lossy.hpp"
#include "taskcode/oracle.hpp"
#include "taskcode/rate_distortion.hpp"
#include "taskcode/renyi.hpp"
#include "taskcode/selftest.hpp"
#include "taskcode/task_encoder.hpp"
#include "taskcode/universal.hpp"

#include <sstream>

namespace py = pybind11;
namespace tc = taskcode;

namespace {

std::vector<std::string> labels_of(const tc::Alphabet& a) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a.label(i));
  return out;
}

tc::Alphabet alphabet_or_range(const std::optional<std::vector<std::string>>& labels, std::size_t k) {
  if (!labels) return tc::Alphabet::range(k);
  if (labels->size() != k) throw tc::InvalidArgument("label count does not match the number of entries");
  return tc::Alphabet(*labels);
}

std::vector<double> probs_of(const tc::Pmf& p) { return {p.probs().begin(), p.probs().end()}; }

tc::SlackPolicy slack_policy(const std::string& s) {
  if (s == "tightest") return tc::SlackPolicy::tightest;
  if (s == "full") return tc::SlackPolicy::full;
  throw tc::InvalidArgument("slack must be 'tightest' or 'full'");
}

py::object optional_upper(const tc::MomentBounds& b) {
  return b.upper ? py::object(py::float_(*b.upper)) : py::object(py::none());
}

}  // namespace

PYBIND11_MODULE(_taskcode, m) {
  m.doc() = "Task encoding: Renyi entropy, guessing-moment encoders, universal and lossy block codes";

  py::register_exception<tc::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<tc::InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<tc::NumericFailure>(m, "NumericFailure", PyExc_ArithmeticError);

  m.def("max_tuples", &tc::max_tuples);
  m.def("set_max_tuples", &tc::set_max_tuples, py::arg("cap"));

  py::class_<tc::Alphabet>(m, "Alphabet")
      .def(py::init<std::vector<std::string>>(), py::arg("symbols"))
      .def_static("range", &tc::Alphabet::range, py::arg("k"))
      .def("__len__", &tc::Alphabet::size)
      .def_property_readonly("labels", &labels_of)
      .def("__eq__", &tc::Alphabet::operator==)
      .def("__repr__", [](const tc::Alphabet& a) { return "Alphabet(" + std::to_string(a.size()) + " symbols)"; });

  py::class_<tc::Pmf>(m, "Pmf")
      .def(py::init([](std::vector<double> probs, std::optional<std::vector<std::string>> labels, bool normalize) {
             auto a = alphabet_or_range(labels, probs.size());
             return normalize ? tc::make_pmf(a, probs) : tc::Pmf(a, std::move(probs));
           }),
           py::arg("probs"), py::arg("labels") = py::none(), py::arg("normalize") = false)
      .def_property_readonly("probs", &probs_of)
      .def_property_readonly("alphabet", &tc::Pmf::alphabet)
      .def_property_readonly("support", &tc::Pmf::support)
      .def("__len__", &tc::Pmf::size)
      .def("__getitem__", [](const tc::Pmf& p, std::size_t i) {
        if (i >= p.size()) throw py::index_error();
        return p[i];
      });

  py::class_<tc::JointPmf>(m, "JointPmf")
      .def(py::init([](std::vector<std::vector<double>> rows, std::optional<std::vector<std::string>> x_labels,
                       std::optional<std::vector<std::string>> y_labels) {
             const std::size_t ny = rows.empty() ? 0 : rows.front().size();
             auto x = alphabet_or_range(x_labels, rows.size());
             auto y = alphabet_or_range(y_labels, ny);
             return tc::JointPmf(std::move(x), std::move(y), std::move(rows));
           }),
           py::arg("rows"), py::arg("x_labels") = py::none(), py::arg("y_labels") = py::none())
      .def_property_readonly("rows", &tc::JointPmf::rows)
      .def("x_marginal", &tc::JointPmf::x_marginal)
      .def("y_marginal", &tc::JointPmf::y_marginal);

  m.def("product_pmf", &tc::product_pmf, py::arg("p"), py::arg("n"));

  m.def("shannon_entropy", &tc::shannon_entropy, py::arg("p"));
  m.def("renyi_entropy", &tc::renyi_entropy, py::arg("p"), py::arg("rho"));
  m.def("conditional_renyi", &tc::conditional_renyi, py::arg("joint"), py::arg("rho"));
  m.def("kl_divergence", &tc::kl_divergence, py::arg("p"), py::arg("q"));
  m.def("renyi_divergence", &tc::renyi_divergence, py::arg("p"), py::arg("q"), py::arg("alpha"));
  m.def("sundaresan_divergence", &tc::sundaresan_divergence, py::arg("p"), py::arg("q"), py::arg("alpha"));
  m.def("tilted_pmf", &tc::tilted_pmf, py::arg("p"), py::arg("rho"));
  m.def(
      "variational_entropy",
      [](const tc::Pmf& p, double rho) {
        auto r = tc::variational_entropy(p, rho);
        return py::make_tuple(r.value, std::move(r.argmax));
      },
      py::arg("p"), py::arg("rho"));
  m.def("binary_entropy", &tc::binary_entropy, py::arg("x"));

  py::class_<tc::Distortion>(m, "Distortion")
      .def(py::init([](std::vector<std::vector<double>> d) {
             const std::size_t nh = d.empty() ? 0 : d.front().size();
             return tc::Distortion(tc::Alphabet::range(d.size()), tc::Alphabet::range(nh), std::move(d));
           }),
           py::arg("matrix"))
      .def_static("hamming", [](std::size_t k) { return tc::Distortion::hamming(tc::Alphabet::range(k)); }, py::arg("k"))
      .def("__call__", &tc::Distortion::operator());

  m.def("rd_function", [](const tc::Pmf& q, const tc::Distortion& d, double level) { return tc::rd_function(q, d, level); },
        py::arg("q"), py::arg("dist"), py::arg("level"));
  m.def(
      "renyi_rd",
      [](const tc::Pmf& p, const tc::Distortion& d, double level, double rho, std::uint64_t seed, int restarts) {
        tc::RenyiRdOptions o;
        o.seed = seed;
        o.restarts = restarts;
        return tc::renyi_rd(p, d, level, rho, o);
      },
      py::arg("p"), py::arg("dist"), py::arg("level"), py::arg("rho"), py::arg("seed") = 0, py::arg("restarts") = 20,
      py::call_guard<py::gil_scoped_release>());
  m.def("binary_hamming_renyi_rd", &tc::binary_hamming_renyi_rd, py::arg("p"), py::arg("level"), py::arg("rho"));

  py::class_<tc::TaskEncoder>(m, "TaskEncoder")
      .def(py::init([](std::size_t descriptions, std::vector<std::size_t> assign) {
             const std::size_t k = assign.size();
             return tc::TaskEncoder(tc::Alphabet::range(k), descriptions, std::move(assign));
           }),
           py::arg("descriptions"), py::arg("assign"))
      .def_property_readonly("descriptions", &tc::TaskEncoder::descriptions)
      .def_property_readonly("assign", &tc::TaskEncoder::assign)
      .def("fiber_sizes", &tc::TaskEncoder::fiber_sizes)
      .def("fibers", &tc::TaskEncoder::fibers)
      .def("used_descriptions", &tc::TaskEncoder::used_descriptions)
      .def("__call__", &tc::TaskEncoder::operator());

  py::class_<tc::SiTaskEncoder>(m, "SiTaskEncoder")
      .def_property_readonly("descriptions", &tc::SiTaskEncoder::descriptions)
      .def("slice", &tc::SiTaskEncoder::slice, py::arg("y"))
      .def("__call__", &tc::SiTaskEncoder::operator());

  m.def("moment", &tc::moment, py::arg("encoder"), py::arg("p"), py::arg("rho"));
  m.def("moment_si", &tc::moment_si, py::arg("encoder"), py::arg("joint"), py::arg("rho"));
  m.def(
      "moment_bounds",
      [](const tc::Pmf& p, double rho, std::size_t descriptions) {
        const auto b = tc::moment_bounds(p, rho, descriptions);
        return py::make_tuple(b.lower, optional_upper(b));
      },
      py::arg("p"), py::arg("rho"), py::arg("descriptions"));
  m.def(
      "side_info_bounds",
      [](const tc::JointPmf& j, double rho, std::size_t descriptions) {
        const auto b = tc::side_info_bounds(j, rho, descriptions);
        return py::make_tuple(b.lower, optional_upper(b));
      },
      py::arg("joint"), py::arg("rho"), py::arg("descriptions"));
  m.def("build_encoder", &tc::build_encoder, py::arg("p"), py::arg("rho"), py::arg("descriptions"));
  m.def(
      "build_mismatched_encoder",
      [](const tc::Pmf& p, const tc::Pmf& q, double rho, std::size_t descriptions) {
        auto r = tc::build_mismatched_encoder(p, q, rho, descriptions);
        return py::make_tuple(std::move(r.encoder), r.bound);
      },
      py::arg("p"), py::arg("q"), py::arg("rho"), py::arg("descriptions"));
  m.def("build_si_encoder", &tc::build_si_encoder, py::arg("joint"), py::arg("rho"), py::arg("descriptions"));

  m.def(
      "exact_min_moment",
      [](const tc::Pmf& p, double rho, std::size_t descriptions) {
        const auto r = tc::exact_min_moment(p, rho, descriptions);
        return std::pair{r.min_moment, r.argmin.blocks()};
      },
      py::arg("p"), py::arg("rho"), py::arg("descriptions"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "exact_min_moment_si",
      [](const tc::JointPmf& j, double rho, std::size_t descriptions) {
        return tc::exact_min_moment_si(j, rho, descriptions).min_moment;
      },
      py::arg("joint"), py::arg("rho"), py::arg("descriptions"), py::call_guard<py::gil_scoped_release>());

  py::class_<tc::UniversalCode>(m, "UniversalCode")
      .def(py::init([](int n, double rate, std::size_t alphabet_size, const std::string& slack) {
             return tc::UniversalCode(tc::BlockCodeParams{n, rate, slack_policy(slack)}, tc::Alphabet::range(alphabet_size));
           }),
           py::arg("n"), py::arg("rate"), py::arg("alphabet_size"), py::arg("slack") = "tightest")
      .def_property_readonly("descriptions", &tc::UniversalCode::descriptions)
      .def_property_readonly("used_descriptions", &tc::UniversalCode::used_descriptions)
      .def_property_readonly("slack", &tc::UniversalCode::slack)
      .def("describe", [](const tc::UniversalCode& c, std::vector<std::size_t> seq) { return c.describe(seq); },
           py::arg("sequence"))
      .def("moment", &tc::UniversalCode::moment, py::arg("p"), py::arg("rho"))
      .def("materialize", &tc::UniversalCode::materialize);
  m.def("universal_moment_bound", &tc::universal_moment_bound, py::arg("n"), py::arg("rate"), py::arg("rho"),
        py::arg("p"));
  m.def("block_moment_lower_bound", &tc::block_moment_lower_bound, py::arg("n"), py::arg("rate"), py::arg("rho"),
        py::arg("p"));

  py::class_<tc::LossyCodec>(m, "LossyCodec")
      .def_readonly("n", &tc::LossyCodec::n)
      .def_readonly("descriptions", &tc::LossyCodec::descriptions)
      .def_readonly("f", &tc::LossyCodec::f)
      .def_readonly("phi", &tc::LossyCodec::phi)
      .def_readonly("slack", &tc::LossyCodec::slack);
  m.def("build_lossy_codec", &tc::build_lossy_codec, py::arg("n"), py::arg("rate"), py::arg("dist"), py::arg("level"));
  m.def("lossy_moment", &tc::lossy_moment, py::arg("codec"), py::arg("p"), py::arg("rho"));
  m.def("codec_worst_distortion", &tc::codec_worst_distortion, py::arg("codec"), py::arg("dist"));

  py::class_<tc::CostFn>(m, "CostFn")
      .def(py::init([](std::vector<double> costs) {
             const std::size_t k = costs.size();
             return tc::CostFn(tc::Alphabet::range(k), std::move(costs));
           }),
           py::arg("costs"))
      .def_property_readonly("costs", &tc::CostFn::costs)
      .def("expectation", &tc::CostFn::expectation, py::arg("p"));
  m.def("cost_moment", &tc::cost_moment, py::arg("encoder"), py::arg("p"), py::arg("cost"), py::arg("n"));
  m.def("cost_converse_bound", &tc::cost_converse_bound, py::arg("p"), py::arg("cost"), py::arg("rate"), py::arg("n"));

  m.def(
      "selftest",
      [](std::uint64_t seed) {
        std::ostringstream out;
        bool ok;
        {
          py::gil_scoped_release release;
          ok = tc::run_selftest(seed, out);
        }
        return py::make_tuple(ok, out.str());
      },
      py::arg("seed") = 0);
}

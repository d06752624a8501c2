#include <cmath>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vdreg/cli.hpp"
#include "vdreg/mcmc.hpp"
#include "vdreg/metrics.hpp"
#include "vdreg/oracle.hpp"
#include "vdreg/partition_prior.hpp"
#include "vdreg/predict.hpp"
#include "vdreg/simgen.hpp"

namespace py = pybind11;
using namespace vdreg;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

io::RunConfig config_from(const py::object& config) {
    if (config.is_none()) return {};
    const auto text = py::module_::import("json").attr("dumps")(config).cast<std::string>();
    return io::run_config_from_json(io::json::parse(text));
}

// NaN cells are masked.
Dataset dataset_from(const Array& x, const std::optional<Array>& y, const std::vector<std::string>& kinds,
                     const std::vector<int>& n_levels) {
    if (x.ndim() != 2) throw Error(ErrorCode::ShapeMismatch, "x must be a 2-d array");
    const auto m = static_cast<std::size_t>(x.shape(0));
    const auto p = static_cast<std::size_t>(x.shape(1));
    Dataset d;
    d.x = Matrix<double>(m, p);
    d.observed = Matrix<std::uint8_t>(m, p, 1);
    auto xv = x.unchecked<2>();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < p; ++l) {
            d.x(i, l) = xv(i, l);
            if (std::isnan(xv(i, l))) d.observed(i, l) = 0;
        }
    for (std::size_t l = 0; l < p; ++l) {
        d.kinds.push_back(kinds.empty() ? CovariateKind::continuous : parse_kind(kinds.at(l)));
        d.n_levels.push_back(n_levels.empty() ? 0 : n_levels.at(l));
        d.names.push_back("x" + std::to_string(l + 1));
    }
    if (y) {
        if (y->ndim() != 1 || static_cast<std::size_t>(y->shape(0)) != m)
            throw Error(ErrorCode::ShapeMismatch, "y must be 1-d with one entry per row");
        d.y = std::vector<double>(y->data(), y->data() + m);
    }
    return d;
}

Array matrix_out(const Dataset& d) {
    Array out({d.m(), d.p()});
    auto v = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < d.m(); ++i)
        for (std::size_t l = 0; l < d.p(); ++l) v(i, l) = d.is_observed(i, l) ? d.x(i, l) : std::nan("");
    return out;
}

py::array_t<double> vector_out(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

class Model {
public:
    Model(const Array& x, const Array& y, const py::object& config, const std::vector<std::string>& kinds,
          const std::vector<int>& n_levels, std::uint64_t stream) {
        config_ = config_from(config).model;
        auto raw = dataset_from(x, y, kinds, n_levels);
        validate(raw, config_);
        auto st = standardize(raw, {});
        transform_ = st.transform;
        train_ = std::move(st.train);
        chain_ = run_chain(train_, config_, stream);
        fitted_ = fitted_values(chain_.draws, train_, config_.family);
    }

    py::dict predict(const Array& x) const {
        auto test = dataset_from(x, std::nullopt, kind_names(), train_.n_levels);
        const auto r = predict_point(chain_.draws, train_, transform_.apply(test), config_);
        py::dict out;
        out["point"] = vector_out(r.point);
        out["sd"] = vector_out(r.sd);
        return out;
    }

    py::array_t<double> fitted() const { return vector_out(fitted_); }

    std::vector<int> k_draws() const {
        std::vector<int> k;
        for (const auto& s : chain_.draws.states) k.push_back(s.k());
        return k;
    }

    std::vector<std::vector<int>> label_draws() const {
        std::vector<std::vector<int>> out;
        for (const auto& s : chain_.draws.states) out.push_back(s.labels);
        return out;
    }

    py::dict diagnostics() const {
        const auto text = io::diagnostics_json(chain_.diagnostics).dump();
        return py::module_::import("json").attr("loads")(text).cast<py::dict>();
    }

private:
    std::vector<std::string> kind_names() const {
        std::vector<std::string> k;
        for (auto c : train_.kinds) k.push_back(to_string(c));
        return k;
    }

    ModelConfig config_;
    Standardization transform_;
    Dataset train_;
    ChainResult chain_;
    std::vector<double> fitted_;
};

py::dict simulate(int p, double noise, const std::string& missing_type, double missing_frac, bool hetero,
                  int n_per_cluster, std::uint64_t seed, bool unchecked) {
    Scenario s{p, noise, parse_missing_type(missing_type), missing_frac, hetero, n_per_cluster, seed, unchecked};
    const auto d = make_scenario_datasets(s);
    py::dict out;
    out["train_x"] = matrix_out(d.train);
    out["train_y"] = vector_out(*d.train.y);
    out["test_x"] = matrix_out(d.test);
    out["test_y"] = vector_out(*d.test.y);
    out["train_labels"] = d.train_labels;
    out["test_labels"] = d.test_labels;
    return out;
}

py::dict exact_prior(const Array& x, const py::object& config, const std::vector<std::string>& kinds,
                     const std::vector<int>& n_levels) {
    const auto d = dataset_from(x, std::nullopt, kinds, n_levels);
    const auto t = oracle::exact_prior(d, config_from(config).model);
    py::dict out;
    out["partitions"] = t.partitions;
    out["prob"] = vector_out(t.prob);
    return out;
}

}  // namespace

PYBIND11_MODULE(_vdreg, m) {
    m.doc() = "Regression and clustering with variable-dimension covariates";
    m.attr("__version__") = cli::kVersion;

    static py::exception<Error> error(m, "VdregError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, (std::string(error_name(e.code())) + ": " + e.what()).c_str());
        }
    });

    py::class_<Model>(m, "Model")
        .def(py::init<const Array&, const Array&, const py::object&, const std::vector<std::string>&,
                      const std::vector<int>&, std::uint64_t>(),
             py::arg("x"), py::arg("y"), py::arg("config") = py::none(), py::arg("kinds") = std::vector<std::string>{},
             py::arg("n_levels") = std::vector<int>{}, py::arg("stream") = 0)
        .def("predict", &Model::predict, py::arg("x"))
        .def_property_readonly("fitted", &Model::fitted)
        .def_property_readonly("k_draws", &Model::k_draws)
        .def_property_readonly("label_draws", &Model::label_draws)
        .def("diagnostics", &Model::diagnostics);

    m.def("simulate", &simulate, py::arg("p") = 2, py::arg("noise") = 0.25, py::arg("missing_type") = "mar",
          py::arg("missing_frac") = 0.0, py::arg("hetero") = false, py::arg("n_per_cluster") = 50,
          py::arg("seed") = 1, py::arg("unchecked") = false);
    m.def("exact_prior", &exact_prior, py::arg("x"), py::arg("config") = py::none(),
          py::arg("kinds") = std::vector<std::string>{}, py::arg("n_levels") = std::vector<int>{});
    m.def(
        "log_sim_continuous",
        [](const std::vector<double>& v, double v1, double mu0, double s0sq) {
            return log_sim_continuous(v, v1, mu0, s0sq);
        },
        py::arg("values"), py::arg("v1") = 0.5, py::arg("mu0") = 0.0, py::arg("s0sq") = 1.0);
    m.def("mse", [](const std::vector<double>& a, const std::vector<double>& b) { return mse(a, b); });
    m.def("mspe", [](const std::vector<double>& a, const std::vector<double>& b) { return mspe(a, b); });
    m.def("tjur_r2", [](const std::vector<double>& y, const std::vector<double>& p) { return tjur_r2(y, p); });
    m.def(
        "pct_correct",
        [](const std::vector<double>& y, const std::vector<double>& p, double t) { return pct_correct(y, p, t); },
        py::arg("y"), py::arg("p"), py::arg("threshold") = 0.5);
    m.def(
        "cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "vdreg");
            std::vector<char*> argv;
            for (auto& a : args) argv.push_back(a.data());
            return cli::run(static_cast<int>(argv.size()), argv.data());
        },
        py::arg("args"));
}

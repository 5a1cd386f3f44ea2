// Python bindings. Arrays cross the boundary as float64 numpy arrays; results
// that have a JSON form in the CLI are returned as that JSON text.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "pettiest/pettiest.hpp"

namespace py = pybind11;
using namespace pettiest;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const Array& a) {
    if (a.ndim() != 2) throw Error(ErrorKind::invalid_input, "expected a 2-D array");
    const auto rows = static_cast<std::size_t>(a.shape(0));
    const auto cols = static_cast<std::size_t>(a.shape(1));
    std::vector<double> v(a.data(), a.data() + rows * cols);
    return Matrix(rows, cols, std::move(v));
}

Dataset to_dataset(const Array& a, std::optional<std::vector<std::string>> ids) {
    Matrix m = to_matrix(a);
    if (ids) return Dataset(std::move(m), std::move(*ids));
    return Dataset(std::move(m));
}

Array to_array(const Matrix& m) {
    Array out({m.rows(), m.cols()});
    std::memcpy(out.mutable_data(), m.values().data(), m.values().size() * sizeof(double));
    return out;
}

py::dict box_dict(const Box& b) {
    std::vector<double> lo, hi;
    for (const auto& iv : b.intervals()) {
        lo.push_back(iv.lower);
        hi.push_back(iv.upper);
    }
    py::dict d;
    d["dims"] = b.dims();
    d["lower"] = lo;
    d["upper"] = hi;
    d["volume"] = b.volume();
    d["log_volume"] = b.log_volume();
    return d;
}

py::dict covering_dict(const CoveringReport& r) {
    py::list boxes;
    for (const auto& b : r.boxes) {
        py::dict d = box_dict(b.box);
        d["members"] = b.members;
        d["count"] = b.count;
        d["mass"] = b.mass;
        d["region_volume"] = b.volume;
        d["density"] = b.density;
        boxes.append(d);
    }
    py::dict out;
    out["boxes"] = boxes;
    out["beta_t"] = r.beta_t;
    out["n"] = r.n;
    out["nested"] = r.nested;
    return out;
}

ComponentMode parse_mode(const std::string& s) {
    if (s == "pettiest") return ComponentMode::pettiest;
    if (s == "principal") return ComponentMode::principal;
    throw Error(ErrorKind::usage, "mode must be 'pettiest' or 'principal'");
}

}  // namespace

PYBIND11_MODULE(_pettiest, m) {
    m.doc() = "Pettiest-component box search (PRIM / fastPRIM).";
    m.attr("__version__") = kVersion;

    static py::exception<Error> error(m, "PettiestError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            error(("[" + std::string(to_string(e.kind())) + "] " + e.what()).c_str());
        }
    });

    m.def("normal_cdf", &normal_cdf, py::arg("x"));
    m.def("normal_quantile", &normal_quantile, py::arg("q"));
    m.def("beta_schedule", &beta_schedule, py::arg("beta"), py::arg("t"));
    m.def("fastprim_levels", &fastprim_levels, py::arg("beta"), py::arg("p_prime"));

    m.def(
        "eigh",
        [](const Array& s) {
            const auto e = eigh(SymmetricMatrix(to_matrix(s)));
            return py::make_tuple(e.eigenvalues, to_array(e.eigenvectors));
        },
        py::arg("matrix"), "Ascending eigenvalues and column eigenvectors of a symmetric matrix.");

    m.def(
        "covariance",
        [](const Array& x) { return to_array(covariance_matrix(Dataset(to_matrix(x))).matrix()); },
        py::arg("data"));

    m.def(
        "sample_mvn",
        [](std::size_t n, const Array& sigma, std::uint64_t seed) {
            return to_array(sample_mvn(n, SymmetricMatrix(to_matrix(sigma)), seed).values());
        },
        py::arg("n"), py::arg("sigma"), py::arg("seed"));

    m.def(
        "paper_sigma", [](std::size_t p) { return to_array(paper_sigma(p).matrix()); },
        py::arg("p") = 100, "Covariance used by the simulation study.");

    m.def(
        "central_quantile_box",
        [](const std::vector<double>& sigmas, double beta) {
            return box_dict(central_quantile_box(sigmas, beta));
        },
        py::arg("sigmas"), py::arg("beta"));

    m.def(
        "prim_peel",
        [](const Array& x, double beta, double alpha) {
            const auto t = prim_peel_to_beta(Dataset(to_matrix(x)), beta, alpha);
            py::dict d = box_dict(t.final_box);
            d["members"] = t.members;
            d["final_mass"] = t.final_mass;
            d["volumes"] = t.volumes;
            py::list steps;
            for (const auto& s : t.steps) {
                py::dict sd;
                sd["dim"] = s.dim;
                sd["side"] = s.side == Side::low ? "low" : "high";
                sd["cut"] = s.cut;
                sd["removed"] = s.removed_count;
                sd["density"] = s.density_after;
                steps.append(sd);
            }
            d["steps"] = steps;
            return d;
        },
        py::arg("data"), py::arg("beta"), py::arg("alpha") = kDefaultAlpha,
        "Peel one PRIM box of mass floor(beta * n) / n.");

    m.def(
        "prim_cover",
        [](const Array& x, double beta, double alpha, std::size_t t) {
            return covering_dict(prim_cover(Dataset(to_matrix(x)), beta, alpha, t));
        },
        py::arg("data"), py::arg("beta"), py::arg("alpha") = kDefaultAlpha, py::arg("t") = 10);

    m.def(
        "fastprim_box",
        [](const Array& x, const std::vector<std::size_t>& dims, double beta) {
            return box_dict(fastprim_box(Dataset(to_matrix(x)), dims, beta));
        },
        py::arg("data"), py::arg("dims"), py::arg("beta"));

    m.def(
        "fastprim_cover",
        [](const Array& x, const std::vector<std::size_t>& dims, double beta, std::size_t t) {
            ComponentSelection sel;
            sel.p_prime = dims.size();
            sel.dims = dims;
            return covering_dict(fastprim_cover(Dataset(to_matrix(x)), sel, beta, t));
        },
        py::arg("data"), py::arg("dims"), py::arg("beta"), py::arg("t") = 10);

    m.def(
        "select_components",
        [](const std::vector<double>& eigenvalues, std::size_t p_prime, const std::string& mode) {
            EigenBasis basis{eigenvalues, Matrix::identity(eigenvalues.size())};
            return select_components(basis, p_prime, parse_mode(mode)).dims;
        },
        py::arg("eigenvalues"), py::arg("p_prime"), py::arg("mode") = "pettiest");

    m.def(
        "subset_volume_scan",
        [](const std::vector<double>& sigmas, double beta, std::size_t p_prime) {
            const auto r = subset_volume_scan(sigmas, beta, p_prime);
            py::list entries;
            for (const auto& e : r.entries) entries.append(py::make_tuple(e.subset, e.volume));
            py::dict d;
            d["entries"] = entries;
            d["argmin"] = r.argmin_subset;
            d["tie"] = r.tie;
            return d;
        },
        py::arg("sigmas"), py::arg("beta"), py::arg("p_prime"));

    m.def(
        "theorem_check_json",
        [](const Array& sigma, double beta, std::size_t p_prime, std::size_t n_mc,
           std::uint64_t seed) {
            return emit_optimality(
                theorem2_check(SymmetricMatrix(to_matrix(sigma)), beta, p_prime, n_mc, seed));
        },
        py::arg("sigma"), py::arg("beta"), py::arg("p_prime"), py::arg("n_mc") = 100000,
        py::arg("seed") = 20210);

    m.def(
        "simulate_json",
        [](std::size_t n, std::size_t p, double beta, double alpha, std::size_t p_prime,
           std::size_t steps, std::size_t reps, std::uint64_t seed, const std::string& methods,
           std::size_t threads, const std::string& format) {
            SimConfig c;
            c.n = n;
            c.p = p;
            c.beta = beta;
            c.alpha = alpha;
            c.p_prime = p_prime;
            c.covering_steps = steps;
            c.reps = reps;
            c.seed = seed;
            c.methods = parse_methods(methods);
            c.threads = threads;
            const auto fmt = parse_format(format);
            std::vector<MethodRunResult> runs;
            {
                py::gil_scoped_release release;
                runs = run_experiment(c);
            }
            return emit_report(make_report(c, std::move(runs)), fmt);
        },
        py::arg("n") = 300, py::arg("p") = 100, py::arg("beta") = 0.1,
        py::arg("alpha") = kDefaultAlpha, py::arg("p_prime") = 2, py::arg("steps") = 10,
        py::arg("reps") = 1, py::arg("seed") = 20210, py::arg("methods") = "all",
        py::arg("threads") = 1, py::arg("format") = "json");

    m.def(
        "analyze_json",
        [](const Array& x, std::optional<std::vector<std::string>> columns,
           const std::string& method, double beta, double alpha, std::size_t p_prime,
           std::size_t steps) {
            const auto a = analyze_dataset(to_dataset(x, std::move(columns)), parse_method(method),
                                           beta, alpha, p_prime, steps);
            return emit_analysis(a, ReportFormat::json);
        },
        py::arg("data"), py::arg("columns") = py::none(), py::arg("method") = "fastprim-pettiest",
        py::arg("beta") = 0.1, py::arg("alpha") = kDefaultAlpha, py::arg("p_prime") = 2,
        py::arg("steps") = 10);
}

#include "pettiest/report.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pettiest/error.hpp"

namespace pettiest {

using json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& field, std::size_t line_no) {
    const std::string t = trim(field);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
        fail(ErrorKind::invalid_input,
             "line " + std::to_string(line_no) + ": cannot parse '" + t + "' as a number");
    }
    return v;
}

json config_json(const SimConfig& c) {
    json methods = json::array();
    for (Method m : c.methods) methods.push_back(std::string(method_id(m)));
    return json{{"n", c.n},
                {"p", c.p},
                {"beta", c.beta},
                {"alpha", c.alpha},
                {"p_prime", c.p_prime},
                {"covering_steps", c.covering_steps},
                {"reps", c.reps},
                {"seed", c.seed},
                {"methods", methods}};
}

json box_json(const Box& box, const std::vector<std::string>& column_ids) {
    json dims = json::array();
    json lower = json::array();
    json upper = json::array();
    for (std::size_t k = 0; k < box.rank(); ++k) {
        dims.push_back(column_ids.at(box.dims()[k]));
        lower.push_back(box.intervals()[k].lower);
        upper.push_back(box.intervals()[k].upper);
    }
    return json{{"dims", dims}, {"lower", lower}, {"upper", upper}};
}

json steps_json(const std::vector<StepStat>& steps) {
    json out = json::array();
    for (const auto& s : steps) {
        out.push_back(
            {{"count", s.count}, {"mass", s.mass}, {"volume", s.volume}, {"density", s.density}});
    }
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ReportFormat parse_format(std::string_view name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "json") return ReportFormat::json;
    fail(ErrorKind::usage, "unknown report format '" + std::string(name) + "'");
}

ExperimentReport make_report(const SimConfig& config, std::vector<MethodRunResult> runs) {
    if (runs.empty()) fail(ErrorKind::usage, "no runs to report");
    ExperimentReport report;
    report.config = config;
    report.density = density_table(runs);
    if (config.reps >= 2) report.bias_variance = summarize_bias_variance(runs);
    report.runs = std::move(runs);
    return report;
}

ReportTables tables_of(const ExperimentReport& report) {
    ReportTables t;
    for (const auto& row : report.density) {
        t.density.push_back({std::string(method_id(row.method)), row.density});
    }
    for (const auto& bv : report.bias_variance) {
        t.bias_variance.push_back({std::string(method_id(bv.method)), bv.variance, bv.bias});
    }
    return t;
}

std::string emit_report(const ExperimentReport& report, ReportFormat format) {
    if (report.density.empty() || report.runs.empty()) {
        fail(ErrorKind::usage, "empty method list");
    }
    const std::size_t steps = report.density.front().density.size();

    if (format == ReportFormat::csv) {
        std::string out = "# density\nmethod";
        for (std::size_t k = 1; k <= steps; ++k) out += ",step_" + std::to_string(k);
        out += '\n';
        for (const auto& row : report.density) {
            out += method_id(row.method);
            for (double d : row.density) out += "," + format_double(d);
            out += '\n';
        }
        if (!report.bias_variance.empty()) {
            out += "\n# bias_variance\nmethod,variance,bias\n";
            for (const auto& bv : report.bias_variance) {
                out += std::string(method_id(bv.method)) + "," + format_double(bv.variance) + "," +
                       format_double(bv.bias) + "\n";
            }
        }
        return out;
    }

    json doc;
    doc["format"] = "pettiest-report";
    doc["version"] = 1;
    doc["config"] = config_json(report.config);
    json density = json::array();
    for (const auto& row : report.density) {
        density.push_back({{"method", method_id(row.method)},
                           {"label", method_label(row.method)},
                           {"density", row.density}});
    }
    doc["density_table"] = {{"steps", steps}, {"rows", density}};
    json spread = json::array();
    for (const auto& bv : report.bias_variance) {
        spread.push_back({{"method", method_id(bv.method)},
                          {"label", method_label(bv.method)},
                          {"reps", bv.reps},
                          {"variance", bv.variance},
                          {"bias", bv.bias}});
    }
    doc["bias_variance"] = spread;
    json runs = json::array();
    for (const auto& r : report.runs) {
        json run{{"rep", r.rep},
                 {"method", method_id(r.method)},
                 {"steps", steps_json(r.steps)},
                 {"center", r.center},
                 {"bias", r.bias}};
        if (report.include_timings) run["runtime_seconds"] = r.runtime_seconds;
        runs.push_back(std::move(run));
    }
    doc["runs"] = std::move(runs);
    return doc.dump(2) + "\n";
}

ReportTables parse_report_csv(std::string_view text) {
    ReportTables t;
    std::istringstream in{std::string(text)};
    std::string line;
    enum class Section { none, density, spread } section = Section::none;
    bool expect_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        if (line == "# density") {
            section = Section::density;
            expect_header = true;
            continue;
        }
        if (line == "# bias_variance") {
            section = Section::spread;
            expect_header = true;
            continue;
        }
        if (expect_header) {
            expect_header = false;
            continue;
        }
        const auto fields = split_csv_line(line);
        if (section == Section::density) {
            ReportTables::Density row{fields.at(0), {}};
            for (std::size_t k = 1; k < fields.size(); ++k) {
                row.values.push_back(parse_double(fields[k], line_no));
            }
            t.density.push_back(std::move(row));
        } else if (section == Section::spread) {
            if (fields.size() != 3) {
                fail(ErrorKind::invalid_input, "line " + std::to_string(line_no) + ": expected 3 fields");
            }
            t.bias_variance.push_back(
                {fields[0], parse_double(fields[1], line_no), parse_double(fields[2], line_no)});
        } else {
            fail(ErrorKind::invalid_input, "line " + std::to_string(line_no) + ": data outside a section");
        }
    }
    return t;
}

ReportTables parse_report_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::invalid_input, std::string("malformed report JSON: ") + e.what());
    }
    ReportTables t;
    for (const auto& row : doc.at("density_table").at("rows")) {
        t.density.push_back({row.at("method").get<std::string>(),
                             row.at("density").get<std::vector<double>>()});
    }
    for (const auto& row : doc.at("bias_variance")) {
        t.bias_variance.push_back({row.at("method").get<std::string>(),
                                   row.at("variance").get<double>(), row.at("bias").get<double>()});
    }
    return t;
}

AnalysisResult analyze_dataset(const Dataset& data, Method method, double beta, double alpha,
                               std::size_t p_prime, std::size_t steps) {
    SimConfig config;
    config.n = data.n();
    config.p = data.p();
    config.beta = beta;
    config.alpha = alpha;
    config.p_prime = p_prime;
    config.covering_steps = steps;
    config.methods = {method};
    config.keep_artifacts = true;
    if (!(beta > 0.0 && beta < 1.0)) fail(ErrorKind::domain, "beta must lie in (0, 1)");
    if (!(alpha > 0.0 && alpha < 0.5)) fail(ErrorKind::domain, "alpha must lie in (0, 0.5)");
    if (steps < 1) fail(ErrorKind::domain, "need at least one covering step");
    if (method != Method::prim && (p_prime < 1 || p_prime > data.p())) {
        fail(ErrorKind::domain, "p' must lie in [1, p]");
    }
    return {method, beta, alpha, p_prime, steps, run_method(data, method, config)};
}

std::string emit_analysis(const AnalysisResult& a, ReportFormat format) {
    const auto& run = a.run;
    const auto& ids = run.working_data->column_ids();
    if (format == ReportFormat::csv) {
        std::string out = "step,count,mass,volume,density\n";
        for (std::size_t k = 0; k < run.steps.size(); ++k) {
            const auto& s = run.steps[k];
            out += std::to_string(k + 1) + "," + std::to_string(s.count) + "," +
                   format_double(s.mass) + "," + format_double(s.volume) + "," +
                   format_double(s.density) + "\n";
        }
        return out;
    }
    json doc;
    doc["format"] = "pettiest-analysis";
    doc["version"] = 1;
    doc["method"] = method_id(a.method);
    doc["beta"] = a.beta;
    doc["alpha"] = a.alpha;
    if (a.method != Method::prim) {
        doc["p_prime"] = a.p_prime;
        doc["components"] = run.selection->dims;
        doc["component_variances"] = run.selection->variances;
    }
    doc["working_columns"] = ids;
    json boxes = json::array();
    for (std::size_t k = 0; k < run.steps.size(); ++k) {
        const auto& s = run.steps[k];
        json b = box_json(run.covering->boxes[k].box, ids);
        b["step"] = k + 1;
        b["count"] = s.count;
        b["mass"] = s.mass;
        b["volume"] = s.volume;
        b["density"] = s.density;
        boxes.push_back(std::move(b));
    }
    doc["boxes"] = std::move(boxes);
    doc["beta_t"] = run.covering->beta_t;
    doc["center"] = run.center;
    doc["center_distance"] = run.bias;
    return doc.dump(2) + "\n";
}

std::string emit_optimality(const OptimalityReport& r) {
    json doc;
    doc["format"] = "pettiest-optimality";
    doc["version"] = 1;
    doc["beta"] = r.beta;
    doc["p_prime"] = r.p_prime;
    doc["eigenvalues"] = r.eigenvalues;
    doc["sigmas"] = r.sigmas;
    doc["pettiest_subset"] = r.pettiest_subset;
    doc["analytic_argmin_subset"] = r.scan.argmin_subset;
    doc["analytic_tie"] = r.scan.tie;
    doc["analytic_argmin_is_pettiest"] = r.analytic_argmin_is_pettiest;
    json entries = json::array();
    for (std::size_t i = 0; i < r.scan.entries.size(); ++i) {
        json e{{"subset", r.scan.entries[i].subset}, {"analytic_volume", r.scan.entries[i].volume}};
        if (r.n_mc > 0) {
            e["empirical_volume"] = r.empirical_volumes[i];
            e["empirical_mass"] = r.empirical_masses[i];
        }
        entries.push_back(std::move(e));
    }
    doc["subsets"] = std::move(entries);
    if (r.n_mc > 0) {
        doc["n_mc"] = r.n_mc;
        doc["empirical_argmin_subset"] = r.empirical_argmin_subset;
        doc["pettiest_empirically_minimal"] = r.pettiest_empirically_minimal;
        doc["max_mass_error"] = r.max_mass_error;
        doc["mass_tolerance"] = r.mass_tolerance;
    }
    doc["passed"] = r.passed();
    return doc.dump(2) + "\n";
}

Dataset read_dataset_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (header.empty() && std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        for (auto& f : split_csv_line(line)) header.push_back(trim(f));
    }
    if (header.empty()) fail(ErrorKind::invalid_input, "CSV input has no header row");

    std::vector<double> values;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            fail(ErrorKind::invalid_input, "line " + std::to_string(line_no) + ": expected " +
                                               std::to_string(header.size()) + " fields, got " +
                                               std::to_string(fields.size()));
        }
        for (const auto& f : fields) values.push_back(parse_double(f, line_no));
        ++rows;
    }
    const std::size_t p = header.size();
    return Dataset(Matrix(rows, p, std::move(values)), std::move(header));
}

Dataset read_dataset_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::invalid_input, "cannot open '" + path + "'");
    return read_dataset_csv(in);
}

std::string write_dataset_csv(const Dataset& data) {
    std::string out;
    for (std::size_t j = 0; j < data.p(); ++j) {
        if (j) out += ',';
        out += data.column_ids()[j];
    }
    out += '\n';
    for (std::size_t i = 0; i < data.n(); ++i) {
        for (std::size_t j = 0; j < data.p(); ++j) {
            if (j) out += ',';
            out += format_double(data(i, j));
        }
        out += '\n';
    }
    return out;
}

}  // namespace pettiest

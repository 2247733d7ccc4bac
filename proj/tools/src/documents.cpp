#include "mateq/documents.hpp"

#include <fstream>
#include <sstream>

#include "mateq/errors.hpp"

namespace mateq::doc {
namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
    return *it;
}

double number(const Json& j, const std::string& where) {
    if (!j.is_number()) bad(where, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) bad(where, "number is not finite");
    return v;
}

int integer(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) bad(where, "expected an integer");
    return j.get<int>();
}

const std::string& text(const Json& j, const std::string& where) {
    if (!j.is_string()) bad(where, "expected a string");
    return j.get_ref<const std::string&>();
}

void check_version(const Json& j) {
    if (text(field(j, "format_version", "document"), "format_version") != kFormatVersion)
        bad("format_version", std::string("unsupported, expected \"") + kFormatVersion + "\"");
}

Json vector_json(const Vec2& v) { return Json::array({to_json(v[0]), to_json(v[1])}); }

Json critical_json(const std::vector<CriticalDatum>& data) {
    Json out = Json::array();
    for (const auto& d : data)
        out.push_back({{"value", to_json(d.value)}, {"multiplicity", d.multiplicity}, {"space_dim", d.space_dim}});
    return out;
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Mat2& x) {
    return Json::array({Json::array({to_json(x(0, 0)), to_json(x(0, 1))}), Json::array({to_json(x(1, 0)), to_json(x(1, 1))})});
}

Complex complex_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) bad(where, "expected a [re, im] pair");
    return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

Mat2 matrix_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) bad(where, "expected a 2x2 array");
    Mat2 x;
    for (int r = 0; r < 2; ++r) {
        const std::string row_where = where + "[" + std::to_string(r) + "]";
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != 2) bad(row_where, "expected a row of 2 entries");
        for (int c = 0; c < 2; ++c)
            x(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], row_where + "[" + std::to_string(c) + "]");
    }
    return x;
}

Json equation_document(const MatrixEquation& eq) {
    Json coeffs = Json::array();
    for (const auto& a : eq.coeffs()) coeffs.push_back(to_json(a));
    return {{"format_version", kFormatVersion}, {"n", eq.degree()}, {"coefficients", std::move(coeffs)}};
}

MatrixEquation equation_from_document(const Json& j) {
    check_version(j);
    const int n = integer(field(j, "n", "document"), "n");
    const Json& coeffs = field(j, "coefficients", "document");
    if (!coeffs.is_array()) bad("coefficients", "expected an array");
    if (static_cast<int>(coeffs.size()) != n)
        bad("coefficients", "expected " + std::to_string(n) + " matrices, found " + std::to_string(coeffs.size()));
    std::vector<Mat2> out;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        out.push_back(matrix_from_json(coeffs[i], "coefficients[" + std::to_string(i) + "]"));
    try {
        return MatrixEquation(std::move(out));
    } catch (const DomainError& e) {
        bad("coefficients", e.what());
    }
}

Json solution_document(const SolutionSet& set) {
    Json out{{"format_version", kFormatVersion}, {"classification", set.is_finite() ? "finite" : "infinite"}};
    Json solutions = Json::array();
    if (set.is_finite())
        for (const auto& s : set.solutions())
            solutions.push_back({{"matrix", to_json(s.matrix)}, {"kind", to_string(s.kind)}, {"residual", s.residual}});
    out["solutions"] = std::move(solutions);
    if (!set.is_finite()) {
        const auto& cert = set.certificate();
        Json samples = Json::array();
        for (const auto& mu : cert.samples) samples.push_back(to_json(mu));
        out["certificate"] = {{"reason", to_string(cert.reason)},
                              {"base", to_json(cert.base)},
                              {"direction", to_json(cert.direction)},
                              {"samples", std::move(samples)}};
    }
    out["metadata"] = {{"critical_values", critical_json(set.critical())}};
    return out;
}

SolutionSet solutions_from_document(const Json& j) {
    check_version(j);
    const std::string& cls = text(field(j, "classification", "document"), "classification");
    if (cls != "finite" && cls != "infinite") bad("classification", "expected \"finite\" or \"infinite\"");

    std::vector<CriticalDatum> critical;
    if (j.contains("metadata")) {
        const Json& values = field(field(j, "metadata", "document"), "critical_values", "metadata");
        if (!values.is_array()) bad("metadata.critical_values", "expected an array");
        for (std::size_t i = 0; i < values.size(); ++i) {
            const std::string where = "metadata.critical_values[" + std::to_string(i) + "]";
            CriticalDatum d;
            d.value = complex_from_json(field(values[i], "value", where), where + ".value");
            d.multiplicity = integer(field(values[i], "multiplicity", where), where + ".multiplicity");
            d.space_dim = integer(field(values[i], "space_dim", where), where + ".space_dim");
            critical.push_back(std::move(d));
        }
    }

    const Json& list = field(j, "solutions", "document");
    if (!list.is_array()) bad("solutions", "expected an array");
    if (cls == "infinite") {
        if (!list.empty()) bad("solutions", "an infinite classification lists no solutions");
        const Json& c = field(j, "certificate", "document");
        InfiniteCertificate cert;
        const auto reason = infinite_reason_from_string(text(field(c, "reason", "certificate"), "certificate.reason"));
        if (!reason) bad("certificate.reason", "unknown reason");
        cert.reason = *reason;
        cert.base = matrix_from_json(field(c, "base", "certificate"), "certificate.base");
        cert.direction = matrix_from_json(field(c, "direction", "certificate"), "certificate.direction");
        const Json& samples = field(c, "samples", "certificate");
        if (!samples.is_array() || samples.size() != cert.samples.size()) bad("certificate.samples", "expected 3 samples");
        for (std::size_t i = 0; i < cert.samples.size(); ++i)
            cert.samples[i] = complex_from_json(samples[i], "certificate.samples[" + std::to_string(i) + "]");
        return SolutionSet(cert, std::move(critical));
    }

    std::vector<Solution> solutions;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "solutions[" + std::to_string(i) + "]";
        Solution s;
        s.matrix = matrix_from_json(field(list[i], "matrix", where), where + ".matrix");
        const auto kind = solution_kind_from_string(text(field(list[i], "kind", where), where + ".kind"));
        if (!kind) bad(where + ".kind", "unknown kind");
        s.kind = *kind;
        s.residual = number(field(list[i], "residual", where), where + ".residual");
        solutions.push_back(std::move(s));
    }
    return SolutionSet(std::move(solutions), std::move(critical));
}

Json plan_document(const ConstructionResult& result) {
    Json out{{"format_version", kFormatVersion},
             {"n", result.equation.degree()},
             {"m", result.expected_count}};
    if (result.special_case) {
        out["special_case"] = *result.special_case;
        out["plan"] = nullptr;
        return out;
    }
    out["special_case"] = nullptr;
    const auto& plan = *result.plan;
    Json lambdas = Json::array();
    Json ys = Json::array();
    Json vectors = Json::array();
    for (std::size_t i = 0; i < plan.lambdas.size(); ++i) {
        lambdas.push_back(to_json(plan.lambdas[i]));
        ys.push_back(to_json(plan.ys[i]));
        vectors.push_back(vector_json(plan.vectors[i]));
    }
    out["plan"] = {{"p", plan.p},
                   {"pbar", plan.pbar},
                   {"partition", plan.partition},
                   {"lambdas", std::move(lambdas)},
                   {"ys", std::move(ys)},
                   {"vectors", std::move(vectors)}};
    return out;
}

Json report_document(const VerificationReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        Json eig = Json::array();
        for (const auto& v : c.eigenvalues) eig.push_back(to_json(v));
        checks.push_back({{"matrix", to_json(c.matrix)},
                          {"eigenvalues", std::move(eig)},
                          {"residual", c.residual},
                          {"residual_bound", c.residual_bound},
                          {"eigen_gap", c.eigen_gap},
                          {"divisor_remainder", c.divisor_remainder},
                          {"divisor_bound", c.divisor_bound}});
    }
    Json dups = Json::array();
    for (const auto& d : report.duplicates) dups.push_back({{"first", d.first}, {"second", d.second}, {"distance", d.distance}});
    Json out{{"format_version", kFormatVersion},
             {"equation", {{"n", report.degree}, {"max_coeff", report.max_coeff}}},
             {"classification", report.infinite ? "infinite" : "finite"},
             {"claimed_count", report.claimed_count},
             {"count_bound", report.count_bound},
             {"bound_ok", report.bound_ok},
             {"checks", std::move(checks)},
             {"duplicates", std::move(dups)}};
    if (report.cross_check)
        out["cross_check"] = {{"a", report.cross_check->a.summary()},
                              {"b", report.cross_check->b.summary()},
                              {"agree", report.cross_check->agree}};
    out["verdict"] = report.pass ? "pass" : "fail";
    out["reasons"] = report.reasons;
    return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_document(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return Json::parse(buffer.str());
    } catch (const Json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace mateq::doc

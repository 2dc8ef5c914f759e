#include "selfcontract/io.hpp"

#include "json.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace selfcontract {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_number(const std::string& field, int line_no) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(field, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error("curve csv line " + std::to_string(line_no) +
                                 ": cannot parse number '" + field + "'");
    }
    if (pos != field.size()) {
        throw std::runtime_error("curve csv line " + std::to_string(line_no) +
                                 ": trailing junk in '" + field + "'");
    }
    if (!std::isfinite(v)) {
        throw std::runtime_error("curve csv line " + std::to_string(line_no) +
                                 ": non-finite value");
    }
    return v;
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    return out;
}

json parse_json(std::istream& in, const char* what) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string(what) + ": invalid json: " + e.what());
    }
    if (!j.is_object()) {
        throw std::runtime_error(std::string(what) + ": top level must be an object");
    }
    return j;
}

int read_dimension(const json& j, const char* what) {
    if (!j.contains("dimension") || !j["dimension"].is_number_integer()) {
        throw std::runtime_error(std::string(what) + ": missing integer 'dimension'");
    }
    int dim = j["dimension"].get<int>();
    if (dim < 1) {
        throw std::runtime_error(std::string(what) + ": dimension must be >= 1");
    }
    return dim;
}

std::vector<Vec> read_points(const json& j, int dim, const char* what) {
    if (!j.contains("points") || !j["points"].is_array() || j["points"].empty()) {
        throw std::runtime_error(std::string(what) + ": missing nonempty 'points' array");
    }
    std::vector<Vec> pts;
    for (const auto& row : j["points"]) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim) {
            throw std::runtime_error(std::string(what) + ": point with wrong dimension");
        }
        Vec p(dim);
        for (int d = 0; d < dim; ++d) {
            if (!row[d].is_number()) {
                throw std::runtime_error(std::string(what) + ": non-numeric coordinate");
            }
            p[d] = row[d].get<double>();
        }
        if (!p.allFinite()) {
            throw std::runtime_error(std::string(what) + ": non-finite coordinate");
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

std::vector<double> read_number_array(const json& j, const char* key, std::size_t expect,
                                      const char* what) {
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != expect) {
        throw std::runtime_error(std::string(what) + ": bad or missing '" + key + "' array");
    }
    std::vector<double> out;
    for (const auto& v : j[key]) {
        if (!v.is_number()) {
            throw std::runtime_error(std::string(what) + ": non-numeric entry in '" + key + "'");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

DiscreteCurve read_curve_csv(std::istream& in) {
    std::vector<Vec> points;
    std::vector<double> params;
    bool has_params = false;
    int dim = -1;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string body = trim(line);
        if (body.empty() || body[0] == '#') {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(body);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(trim(field));
        }
        bool row_has_param = !fields.empty() && fields[0].rfind("t=", 0) == 0;
        if (points.empty()) {
            has_params = row_has_param;
        } else if (row_has_param != has_params) {
            throw std::runtime_error("curve csv line " + std::to_string(line_no) +
                                     ": inconsistent presence of the t= column");
        }
        if (row_has_param) {
            params.push_back(parse_number(fields[0].substr(2), line_no));
            fields.erase(fields.begin());
        }
        if (fields.empty()) {
            throw std::runtime_error("curve csv line " + std::to_string(line_no) +
                                     ": vertex with no coordinates");
        }
        if (dim < 0) {
            dim = static_cast<int>(fields.size());
        } else if (static_cast<int>(fields.size()) != dim) {
            throw std::runtime_error("curve csv line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(dim) + " coordinates, got " +
                                     std::to_string(fields.size()));
        }
        Vec p(dim);
        for (int d = 0; d < dim; ++d) {
            p[d] = parse_number(fields[static_cast<std::size_t>(d)], line_no);
        }
        points.push_back(std::move(p));
    }
    if (points.empty()) {
        throw std::runtime_error("curve csv: no vertices found");
    }
    if (has_params) {
        return DiscreteCurve(std::move(points), std::move(params));
    }
    return DiscreteCurve(std::move(points));
}

DiscreteCurve read_curve_csv_file(const std::string& path) {
    std::ifstream in = open_input(path);
    return read_curve_csv(in);
}

void write_curve_csv(std::ostream& out, const DiscreteCurve& curve) {
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (curve.params()) {
            out << "t=" << format_double((*curve.params())[i]) << ",";
        }
        const Vec& p = curve[i];
        for (int d = 0; d < curve.dim(); ++d) {
            out << format_double(p[d]);
            if (d + 1 < curve.dim()) {
                out << ",";
            }
        }
        out << "\n";
    }
}

void write_curve_csv_file(const std::string& path, const DiscreteCurve& curve) {
    std::ofstream out = open_output(path);
    write_curve_csv(out, curve);
}

ProxTrace read_trace_json(std::istream& in) {
    json j = parse_json(in, "trace json");
    ProxTrace trace;
    trace.dim = read_dimension(j, "trace json");
    trace.iterates = read_points(j, trace.dim, "trace json");
    std::size_t n = trace.iterates.size();
    trace.values = read_number_array(j, "values", n, "trace json");
    trace.steps = read_number_array(j, "steps", n - 1, "trace json");
    trace.residuals = read_number_array(j, "residuals", n - 1, "trace json");
    return trace;
}

ProxTrace read_trace_json_file(const std::string& path) {
    std::ifstream in = open_input(path);
    return read_trace_json(in);
}

void write_trace_json(std::ostream& out, const ProxTrace& trace) {
    json j;
    j["dimension"] = trace.dim;
    json pts = json::array();
    for (const Vec& p : trace.iterates) {
        json row = json::array();
        for (int d = 0; d < trace.dim; ++d) {
            row.push_back(p[d]);
        }
        pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    j["values"] = trace.values;
    j["steps"] = trace.steps;
    j["residuals"] = trace.residuals;
    out << j.dump(2) << "\n";
}

void write_trace_json_file(const std::string& path, const ProxTrace& trace) {
    std::ofstream out = open_output(path);
    write_trace_json(out, trace);
}

FoliationOrbit read_orbit_json(std::istream& in) {
    json j = parse_json(in, "orbit json");
    int dim = read_dimension(j, "orbit json");
    std::vector<Vec> pts = read_points(j, dim, "orbit json");
    std::vector<double> levels = read_number_array(j, "levels", pts.size(), "orbit json");
    double tol = 1e-9;
    if (j.contains("level_tol")) {
        if (!j["level_tol"].is_number()) {
            throw std::runtime_error("orbit json: non-numeric 'level_tol'");
        }
        tol = j["level_tol"].get<double>();
    }
    return FoliationOrbit{DiscreteCurve(std::move(pts)), std::move(levels), tol};
}

FoliationOrbit read_orbit_json_file(const std::string& path) {
    std::ifstream in = open_input(path);
    return read_orbit_json(in);
}

void write_orbit_json(std::ostream& out, const FoliationOrbit& orbit) {
    json j;
    j["dimension"] = orbit.curve.dim();
    json pts = json::array();
    for (std::size_t i = 0; i < orbit.curve.size(); ++i) {
        json row = json::array();
        for (int d = 0; d < orbit.curve.dim(); ++d) {
            row.push_back(orbit.curve[i][d]);
        }
        pts.push_back(std::move(row));
    }
    j["points"] = std::move(pts);
    j["levels"] = orbit.levels;
    j["level_tol"] = orbit.level_tol;
    out << j.dump(2) << "\n";
}

void write_orbit_json_file(const std::string& path, const FoliationOrbit& orbit) {
    std::ofstream out = open_output(path);
    write_orbit_json(out, orbit);
}

} // namespace selfcontract

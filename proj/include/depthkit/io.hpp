#pragma once

// Point-file format and result records.
//
// Point file: header "dim n", then n coordinate lines, then a final line
// "q <coords>". Coordinates are written with 17 significant digits so that
// doubles round-trip exactly.

#include "depthkit/errors.hpp"
#include "depthkit/geometry.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace depthkit {

inline std::string format_coord(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_point_file(std::ostream& os, const PointSet& P, const Point& q) {
    os << P.dim << ' ' << P.size() << '\n';
    for (int i = 0; i < P.size(); ++i) {
        for (int j = 0; j < P.dim; ++j) {
            if (j) os << ' ';
            os << format_coord(P[i][j]);
        }
        os << '\n';
    }
    os << 'q';
    for (int j = 0; j < P.dim; ++j) os << ' ' << format_coord(q[j]);
    os << '\n';
}

struct ParsedPointFile {
    PointSet points;
    Point q;
};

inline ParsedPointFile read_point_file(std::istream& is) {
    ParsedPointFile pf;
    int dim = 0, n = 0;
    if (!(is >> dim >> n) || dim < 1 || n < 0)
        throw InputError("point file: bad header, expected 'dim n'");
    pf.points.dim = dim;
    pf.points.points.reserve(n);
    for (int i = 0; i < n; ++i) {
        Point p(dim);
        for (int j = 0; j < dim; ++j) {
            if (!(is >> p[j])) throw InputError("point file: truncated coordinates");
        }
        pf.points.push_back(std::move(p));
    }
    std::string tag;
    if (!(is >> tag) || tag != "q") throw InputError("point file: expected trailing 'q' record");
    pf.q.resize(dim);
    for (int j = 0; j < dim; ++j) {
        if (!(is >> pf.q[j])) throw InputError("point file: truncated query point");
    }
    return pf;
}

// One record per run; fixed CSV column order.
struct ResultRecord {
    std::string method;
    double value = 0.0;
    std::optional<double> eps;
    std::uint64_t seed = 0;
    int n = 0;
    int d = 0;
    std::uint64_t work = 0;
    double wall_ms = 0.0;
    std::string instance_id;
};

inline nlohmann::ordered_json to_json(const ResultRecord& r) {
    nlohmann::ordered_json j;
    j["method"] = r.method;
    j["value"] = r.value;
    if (r.eps) j["eps"] = *r.eps; else j["eps"] = nullptr;
    j["seed"] = r.seed;
    j["n"] = r.n;
    j["d"] = r.d;
    j["work"] = r.work;
    j["wall_ms"] = r.wall_ms;
    j["instance_id"] = r.instance_id;
    return j;
}

inline std::string csv_header() {
    return "method,value,eps,seed,n,d,work,wall_ms,instance_id";
}

inline std::string to_csv_row(const ResultRecord& r) {
    std::ostringstream os;
    os << r.method << ',' << format_coord(r.value) << ',';
    if (r.eps) os << format_coord(*r.eps);
    os << ',' << r.seed << ',' << r.n << ',' << r.d << ',' << r.work << ','
       << format_coord(r.wall_ms) << ',' << r.instance_id;
    return os.str();
}

} // namespace depthkit

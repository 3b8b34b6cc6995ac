#include "qheat/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qheat {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string trajectory_csv(const CoeffTrajectory& tr) {
    std::string out = "t,k,u\n";
    for (int j = 0; j < tr.lattice.size(); ++j) {
        const std::string t = format_double(tr.lattice.point(j));
        const CoeffVec& state = tr.states[static_cast<size_t>(j)];
        for (size_t k = 0; k < state.size(); ++k) {
            out += t;
            out += ',';
            out += std::to_string(k + 1);
            out += ',';
            out += format_double(state[k]);
            out += '\n';
        }
    }
    return out;
}

std::string source_csv(const CoeffVec& f) {
    std::string out = "k,f\n";
    for (size_t k = 0; k < f.size(); ++k) {
        out += std::to_string(k + 1);
        out += ',';
        out += format_double(f[k]);
        out += '\n';
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "q,n_terms,u_horizon,classical,abs_error\n";
    for (const SweepRow& r : rows) {
        out += format_double(r.q);
        out += ',';
        out += std::to_string(r.n_terms);
        out += ',';
        out += format_double(r.u_horizon);
        out += ',';
        out += format_double(r.classical);
        out += ',';
        out += format_double(r.abs_error);
        out += '\n';
    }
    return out;
}

std::string spatial_csv(const SpatialFn& f) {
    std::string out = "x,value\n";
    for (size_t i = 0; i < f.values.size(); ++i) {
        out += format_double(f.x(static_cast<int>(i)));
        out += ',';
        out += format_double(f.values[i]);
        out += '\n';
    }
    return out;
}

SpatialFn read_spatial_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open spatial CSV: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,value", 0) != 0)
        throw std::invalid_argument("spatial CSV must start with header 'x,value': " + path);
    std::vector<double> xs, vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("malformed spatial CSV row: " + line);
        xs.push_back(std::stod(line.substr(0, comma)));
        vals.push_back(std::stod(line.substr(comma + 1)));
    }
    if (xs.size() < 3) throw std::invalid_argument("spatial CSV needs at least 3 rows");
    const int n = static_cast<int>(xs.size()) - 1;
    for (int i = 0; i <= n; ++i) {
        double expect = std::numbers::pi * i / n;
        if (std::abs(xs[static_cast<size_t>(i)] - expect) > 1e-9 * (1.0 + expect))
            throw std::invalid_argument("spatial CSV grid must be uniform on [0, pi]");
    }
    return SpatialFn(n, std::move(vals));
}

}  // namespace qheat

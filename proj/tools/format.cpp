#include "format.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace vvmf::cli {

std::string format_value(const Cyclotomic& x, ValueMode mode, int precision) {
    if (mode == ValueMode::exact) return x.minimized().str();
    if (precision < 0) throw std::invalid_argument("format_value: negative precision");
    auto z = x.to_complex();
    double re = z.real() + 0.0, im = z.imag() + 0.0;
    const double eps = 0.5 * std::pow(10.0, -precision);
    if (std::fabs(re) < eps) re = 0.0;
    if (std::fabs(im) < eps) im = 0.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.*f%+.*fi", precision, re, precision, im);
    return buf;
}

IntMatrix parse_gram(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& x) {
        throw input_error(std::string("gram input is not valid JSON: ") + x.what());
    }
    if (!j.is_object() || !j.contains("gram") || !j["gram"].is_array())
        throw input_error("gram input must be an object {\"gram\": [[int]]}");
    IntMatrix G;
    for (const auto& row : j["gram"]) {
        if (!row.is_array()) throw input_error("gram rows must be arrays");
        std::vector<long> r;
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw input_error("gram entries must be integers");
            r.push_back(v.get<long>());
        }
        G.push_back(std::move(r));
    }
    if (G.empty()) throw input_error("gram matrix is empty");
    for (const auto& r : G)
        if (r.size() != G.size()) throw input_error("gram matrix is not square");
    try {
        LatticeInput::from_gram(G);
    } catch (const std::exception& x) {
        throw input_error(std::string("invalid gram matrix: ") + x.what());
    }
    return G;
}

IntMatrix read_gram_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_gram(ss.str());
}

}  // namespace vvmf::cli

#include "solver/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace solver {

namespace {
using nlohmann::json;

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invariant_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw invariant_error("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

std::vector<double> number_array(const json& j, const std::string& what) {
    if (!j.is_array()) throw invariant_error(what + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw invariant_error(what + " must contain only numbers");
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw invariant_error(what + " contains a non-finite value");
        out.push_back(d);
    }
    return out;
}
}  // namespace

LinearSystem parse_system_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw invariant_error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("A") || !j.contains("b"))
        throw invariant_error("system JSON must be an object with fields n, A, b");
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
        throw invariant_error("field n must be a positive integer");
    const std::size_t n = j["n"].get<std::size_t>();
    if (!j["A"].is_array() || j["A"].size() != n)
        throw invariant_error("field A must be an array of n rows");
    std::vector<std::vector<double>> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto row = number_array(j["A"][i], "row " + std::to_string(i) + " of A");
        if (row.size() != n)
            throw invariant_error("ragged row: row " + std::to_string(i) + " has length " +
                                  std::to_string(row.size()) + ", expected " + std::to_string(n));
        rows.push_back(std::move(row));
    }
    auto b = number_array(j["b"], "field b");
    if (b.size() != n) throw invariant_error("field b must have length n");
    // LinearSystem construction reports any zero diagonal with its row index.
    return LinearSystem(DenseMatrix::from_rows(rows), Vector::of(std::move(b)));
}

LinearSystem load_system_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invariant_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_system_json(ss.str());
}

std::string system_to_json(const LinearSystem& sys) {
    json j;
    const std::size_t n = sys.size();
    j["n"] = n;
    json rows = json::array();
    for (std::size_t i = 0; i < n; ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < n; ++c) row.push_back(sys.a.at(i, c));
        rows.push_back(std::move(row));
    }
    j["A"] = std::move(rows);
    json b = json::array();
    for (std::size_t i = 0; i < n; ++i) b.push_back(sys.b[i]);
    j["b"] = std::move(b);
    return j.dump(2) + "\n";
}

void save_system_json(const LinearSystem& sys, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw invariant_error("cannot write file: " + path);
    out << system_to_json(sys);
}

Vector load_vector_json(const std::string& path, std::size_t expected_len) {
    json j = parse_file(path);
    if (j.is_object() && j.contains("solution")) j = j["solution"];
    auto v = number_array(j, "vector");
    if (v.size() != expected_len)
        throw invariant_error("vector length " + std::to_string(v.size()) + " does not match system dimension " +
                              std::to_string(expected_len));
    return Vector::of(std::move(v));
}

}  // namespace solver

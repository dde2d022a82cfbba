#include "apport/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace apport {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string matrix_to_string(const CMatrix& a) {
    std::ostringstream os;
    os << "{\"n\": " << a.n() << ", \"entries\": [";
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        if (i) os << ", ";
        const cd& z = a.entries()[i];
        os << '[' << fmt17(z.real()) << ", " << fmt17(z.imag()) << ']';
    }
    os << "]}\n";
    return os.str();
}

CMatrix matrix_from_string(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.contains("n") || !j.contains("entries"))
        throw std::invalid_argument("matrix file: missing n or entries");
    const std::size_t n = j.at("n").get<std::size_t>();
    const auto& e = j.at("entries");
    if (!e.is_array() || e.size() != n * n)
        throw std::invalid_argument("matrix file: entries length must be n^2");
    std::vector<cd> entries;
    entries.reserve(n * n);
    for (const auto& pair : e) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("matrix file: entry must be [re, im]");
        entries.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    CMatrix a(n, std::move(entries));
    if (!a.finite()) throw std::invalid_argument("matrix file: non-finite entry");
    return a;
}

std::string graph_to_string(const LoopGraph& g) {
    std::ostringstream os;
    os << g.n() << '\n';
    for (const auto& e : g.edges()) os << e.first << ' ' << e.second << '\n';
    return os.str();
}

LoopGraph graph_from_string(const std::string& text) {
    std::istringstream is(text);
    std::size_t n = 0;
    if (!(is >> n) || n == 0) throw std::invalid_argument("graph file: bad vertex count");
    LoopGraph g(n);
    std::size_t i = 0, j = 0;
    while (is >> i >> j) g.add_edge(i, j);
    return g;
}

std::string function_to_string(const ZnFunction& f) {
    std::ostringstream os;
    os << f.n() << '\n';
    for (std::size_t i = 0; i < f.n(); ++i) os << (i ? " " : "") << f(i);
    os << '\n';
    return os.str();
}

ZnFunction function_from_string(const std::string& text) {
    std::istringstream is(text);
    std::size_t n = 0;
    if (!(is >> n) || n == 0) throw std::invalid_argument("function file: bad size");
    std::vector<std::size_t> table(n);
    for (std::size_t i = 0; i < n; ++i)
        if (!(is >> table[i])) throw std::invalid_argument("function file: too few values");
    return ZnFunction(std::move(table));
}

std::string factors_to_string(const std::vector<std::vector<long long>>& rows) {
    std::ostringstream os;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
        os << '\n';
    }
    return os.str();
}

std::vector<std::vector<long long>> factors_from_string(const std::string& text) {
    std::vector<std::vector<long long>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<long long> row;
        long long v = 0;
        while (ls >> v) row.push_back(v);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

void write_matrix(const std::string& path, const CMatrix& a) {
    write_text_file(path, matrix_to_string(a));
}
CMatrix read_matrix(const std::string& path) { return matrix_from_string(read_text_file(path)); }

void write_graph(const std::string& path, const LoopGraph& g) {
    write_text_file(path, graph_to_string(g));
}
LoopGraph read_graph(const std::string& path) { return graph_from_string(read_text_file(path)); }

void write_function(const std::string& path, const ZnFunction& f) {
    write_text_file(path, function_to_string(f));
}
ZnFunction read_function(const std::string& path) {
    return function_from_string(read_text_file(path));
}

void write_factors(const std::string& path, const std::vector<std::vector<long long>>& rows) {
    write_text_file(path, factors_to_string(rows));
}
std::vector<std::vector<long long>> read_factors(const std::string& path) {
    return factors_from_string(read_text_file(path));
}

}  // namespace apport

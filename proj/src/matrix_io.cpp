#include "pcrank/matrix_io.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pcrank/errors.hpp"

namespace pcrank {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_number(const std::string& token, int line, int column) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
        throw parse_error("cannot parse \"" + token + "\" as a number", line, column);
    }
    return v;
}

/// A field is "?", a decimal number, or a rational literal "p/q".
std::optional<double> parse_field(const std::string& raw, int line, int column) {
    const std::string token = trim(raw);
    if (token.empty()) {
        throw parse_error("empty field", line, column);
    }
    if (token == "?") return std::nullopt;

    const std::size_t slash = token.find('/');
    if (slash != std::string::npos) {
        const std::string num = trim(token.substr(0, slash));
        const std::string den = trim(token.substr(slash + 1));
        if (num.empty() || den.empty() || den.find('/') != std::string::npos) {
            throw parse_error("malformed rational literal \"" + token + "\"", line, column);
        }
        const double p = parse_number(num, line, column);
        const double q = parse_number(den, line, column);
        if (q == 0.0) {
            throw parse_error("rational literal \"" + token + "\" divides by zero", line, column);
        }
        return p / q;
    }
    return parse_number(token, line, column);
}

}  // namespace

PCMatrix parse_matrix_text(const std::string& text) {
    RawGrid grid;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;

        std::vector<std::optional<double>> row;
        std::istringstream fields(line);
        std::string field;
        int column = 0;
        while (std::getline(fields, field, ',')) {
            ++column;
            row.push_back(parse_field(field, line_no, column));
        }
        if (!line.empty() && line.back() == ',') {
            throw parse_error("trailing comma", line_no, column + 1);
        }
        grid.push_back(std::move(row));
    }
    if (grid.empty()) {
        throw parse_error("file contains no matrix rows", 1, 1);
    }
    return PCMatrix::validate(grid);
}

PCMatrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw parse_error("cannot open \"" + path + "\"", 0, 0);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_matrix_text(buffer.str());
}

std::string serialize_matrix(const PCMatrix& matrix) {
    std::string out;
    char buf[64];
    const int n = matrix.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j > 0) out += ',';
            if (matrix.known(i, j)) {
                std::snprintf(buf, sizeof(buf), "%.17g", matrix.at(i, j));
                out += buf;
            } else {
                out += '?';
            }
        }
        out += '\n';
    }
    return out;
}

}  // namespace pcrank

#include "extridge/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace extridge {

namespace {

std::string loc(const std::string& path, std::size_t line, std::size_t col) {
    return path + ": line " + std::to_string(line) + ", column " +
           std::to_string(col);
}

double parse_cell(const std::string& cell, const std::string& path,
                  std::size_t line, std::size_t col) {
    std::size_t consumed = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &consumed);
    } catch (const std::exception&) {
        throw InputError("unparsable number \"" + cell + "\" at " +
                         loc(path, line, col));
    }
    // allow trailing whitespace only
    for (std::size_t i = consumed; i < cell.size(); ++i) {
        if (!std::isspace(static_cast<unsigned char>(cell[i]))) {
            throw InputError("unparsable number \"" + cell + "\" at " +
                             loc(path, line, col));
        }
    }
    return v;
}

std::vector<std::vector<double>> read_csv_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) {
            ++col;
            row.push_back(parse_cell(cell, path, lineno, col));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

} // namespace

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Matrix read_matrix_file(const std::string& path) {
    if (ends_with(path, ".json")) {
        const nlohmann::json j = read_json_file(path);
        if (!j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
            throw InputError(path + ": JSON matrix needs rows, cols, data");
        }
        const auto rows = j["rows"].get<std::size_t>();
        const auto cols = j["cols"].get<std::size_t>();
        std::vector<double> data = j["data"].get<std::vector<double>>();
        return Matrix::from_entries(rows, cols, std::move(data));
    }
    const auto rows = read_csv_rows(path);
    if (rows.empty()) throw InputError(path + ": empty matrix file");
    const std::size_t cols = rows.front().size();
    std::vector<double> data;
    data.reserve(rows.size() * cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) {
            throw InputError(path + ": line " + std::to_string(i + 1) + " has " +
                             std::to_string(rows[i].size()) +
                             " cells, expected " + std::to_string(cols));
        }
        data.insert(data.end(), rows[i].begin(), rows[i].end());
    }
    return Matrix::from_entries(rows.size(), cols, std::move(data));
}

Vector read_vector_file(const std::string& path) {
    if (ends_with(path, ".json")) {
        const nlohmann::json j = read_json_file(path);
        if (!j.contains("data")) {
            throw InputError(path + ": JSON vector needs a data array");
        }
        return Vector::from_entries(j["data"].get<std::vector<double>>());
    }
    const auto rows = read_csv_rows(path);
    if (rows.empty()) throw InputError(path + ": empty vector file");
    std::vector<double> data;
    if (rows.size() == 1) {
        data = rows.front();
    } else {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != 1) {
                throw InputError(path + ": line " + std::to_string(i + 1) +
                                 " has " + std::to_string(rows[i].size()) +
                                 " cells, expected a single column");
            }
            data.push_back(rows[i].front());
        }
    }
    return Vector::from_entries(std::move(data));
}

void write_vector_csv(const std::string& path, const Vector& v) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    for (std::size_t i = 0; i < v.dim(); ++i) {
        out << format_double(v[i]) << "\n";
    }
}

Spectrum read_spectrum_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::string header;
    if (!std::getline(in, header) ||
        header.find("sample") == std::string::npos) {
        throw InputError(path + ": missing sample,eigenvalue header");
    }
    std::vector<double> eigenvalues;
    std::vector<long> sample_ids;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw InputError(path + ": line " + std::to_string(lineno) +
                             " is not sample,eigenvalue");
        }
        sample_ids.push_back(
            static_cast<long>(parse_cell(line.substr(0, comma), path, lineno, 1)));
        eigenvalues.push_back(
            parse_cell(line.substr(comma + 1), path, lineno, 2));
    }
    if (eigenvalues.empty()) throw InputError(path + ": no eigenvalue rows");
    const long samples = sample_ids.back() + 1;
    if (samples < 1 || eigenvalues.size() % static_cast<std::size_t>(samples) != 0) {
        throw InputError(path + ": row count does not split into samples");
    }
    const auto n = static_cast<int>(eigenvalues.size() /
                                    static_cast<std::size_t>(samples));
    return Spectrum(std::move(eigenvalues), n, static_cast<int>(samples));
}

} // namespace extridge

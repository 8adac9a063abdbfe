#include "csst/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "csst/errors.hpp"

namespace csst {

namespace {

std::string fmt_g(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

double parse_double(const std::string& field, const std::filesystem::path& path,
                    std::size_t line_no) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
        throw ParseError(path.string(), line_no, "cannot parse value '" + field + "'");
    }
    return v;
}

} // namespace

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open " + tmp.string() + " for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw IoError("write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                      ec.message());
    }
}

void write_dataset_csv(const Dataset& dataset, const std::filesystem::path& path) {
    std::string out;
    for (std::size_t s = 0; s < dataset.dim(); ++s) {
        if (s > 0) out += ',';
        out += dataset.dim_names.empty() ? "x" + std::to_string(s) : dataset.dim_names[s];
    }
    out += '\n';
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const auto row = dataset.row(i);
        for (std::size_t s = 0; s < row.size(); ++s) {
            if (s > 0) out += ',';
            out += fmt_g(row[s], 17);
        }
        out += '\n';
    }
    atomic_write_text(path, out);
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
    const std::string text = read_file(path);

    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t pos = text.find('\n', start);
        if (pos == std::string::npos) pos = text.size();
        std::string line = text.substr(start, pos - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        start = pos + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();

    if (lines.empty()) {
        throw ParseError(path.string(), 1, "empty file");
    }
    const std::vector<std::string> header = split(lines[0], ',');
    const std::size_t t = header.size();
    if (lines.size() < 2) {
        throw ParseError(path.string(), 1, "no data rows");
    }

    Matrix points(lines.size() - 1, t);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::vector<std::string> fields = split(lines[i], ',');
        if (fields.size() != t) {
            throw ParseError(path.string(), i + 1,
                             "expected " + std::to_string(t) + " fields, got " +
                                 std::to_string(fields.size()));
        }
        for (std::size_t s = 0; s < t; ++s) {
            points(i - 1, s) = parse_double(fields[s], path, i + 1);
        }
    }
    return make_dataset(std::move(points), header);
}

void write_codebook_json(const Codebook& codebook, const std::filesystem::path& path) {
    nlohmann::json doc;
    doc["rows"] = codebook.topology.rows;
    doc["cols"] = codebook.topology.cols;
    doc["dim"] = codebook.dim();
    auto protos = nlohmann::json::array();
    for (std::size_t j = 0; j < codebook.size(); ++j) {
        auto row = nlohmann::json::array();
        for (double v : codebook.prototype(j)) row.push_back(v);
        protos.push_back(std::move(row));
    }
    doc["prototypes"] = std::move(protos);
    atomic_write_text(path, doc.dump(2) + "\n");
}

Codebook read_codebook_json(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }

    const auto require = [&](const char* key) -> const nlohmann::json& {
        if (!doc.is_object() || !doc.contains(key)) {
            throw SchemaError(path.string() + ": missing field '" + key + "'");
        }
        return doc[key];
    };
    const auto int_field = [&](const char* key) {
        const auto& v = require(key);
        if (!v.is_number_integer() || v.get<std::int64_t>() < 1 ||
            v.get<std::int64_t>() > 100000000) {
            throw SchemaError(path.string() + ": field '" + key + "' must be a positive integer");
        }
        return v.get<int>();
    };

    const int rows = int_field("rows");
    const int cols = int_field("cols");
    const int dim = int_field("dim");
    const auto& protos = require("prototypes");
    if (!protos.is_array() ||
        protos.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw SchemaError(path.string() + ": 'prototypes' must hold rows*cols vectors");
    }

    Codebook cb;
    cb.topology = GridTopology{rows, cols};
    cb.prototypes = Matrix(protos.size(), static_cast<std::size_t>(dim));
    for (std::size_t j = 0; j < protos.size(); ++j) {
        const auto& row = protos[j];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(dim)) {
            throw SchemaError(path.string() + ": prototype " + std::to_string(j) +
                              " does not have dimension " + std::to_string(dim));
        }
        for (std::size_t s = 0; s < row.size(); ++s) {
            if (!row[s].is_number()) {
                throw SchemaError(path.string() + ": prototype entries must be numbers");
            }
            const double v = row[s].get<double>();
            if (!std::isfinite(v)) {
                throw SchemaError(path.string() + ": prototype entries must be finite");
            }
            cb.prototypes(j, s) = v;
        }
    }
    return cb;
}

void write_matrix_csv(const LabeledMatrix& matrix, const std::filesystem::path& path) {
    std::string out = "region";
    for (int label : matrix.labels) {
        out += ',';
        out += std::to_string(label);
    }
    out += '\n';
    for (std::size_t a = 0; a < matrix.size(); ++a) {
        out += std::to_string(matrix.labels[a]);
        for (std::size_t b = 0; b < matrix.size(); ++b) {
            out += ',';
            const auto& cell = matrix.at(a, b);
            out += cell.has_value() ? fmt_g(*cell, 9) : "NA";
        }
        out += '\n';
    }
    atomic_write_text(path, out);
}

void write_values_csv(const Matrix& values, const std::filesystem::path& path) {
    std::string out;
    for (std::size_t r = 0; r < values.rows; ++r) {
        for (std::size_t c = 0; c < values.cols; ++c) {
            if (c > 0) out += ',';
            out += fmt_g(values(r, c), 9);
        }
        out += '\n';
    }
    atomic_write_text(path, out);
}

void write_pgm_heatmap(const Matrix& values, const std::filesystem::path& path, bool invert) {
    if (values.rows == 0 || values.cols == 0) {
        throw InvalidParameter("write_pgm_heatmap: empty matrix");
    }
    double lo = values.data[0];
    double hi = values.data[0];
    for (double v : values.data) {
        if (!std::isfinite(v)) {
            throw InvalidParameter("write_pgm_heatmap: entries must be finite");
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double range = hi - lo;

    std::string out = "P2\n" + std::to_string(values.cols) + " " + std::to_string(values.rows) +
                      "\n255\n";
    for (std::size_t r = 0; r < values.rows; ++r) {
        for (std::size_t c = 0; c < values.cols; ++c) {
            long pixel = 0;
            if (range > 0.0) {
                pixel = std::lround((values(r, c) - lo) / range * 255.0);
                if (invert) pixel = 255 - pixel;
            }
            if (c > 0) out += ' ';
            out += std::to_string(pixel);
        }
        out += '\n';
    }
    atomic_write_text(path, out);
}

} // namespace csst

#include "lrv/cli/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace lrv::cli {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    return fields;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) {
        return {};
    }
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

}  // namespace

std::vector<double> read_series_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t column = 0;
    bool have_header = false;
    std::vector<double> out;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty() || trim(line) == "\r") {
            continue;
        }
        const std::vector<std::string> fields = split_fields(line);
        if (!have_header) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                if (trim(fields[i]) == "x") {
                    column = i;
                    break;
                }
            }
            have_header = true;
            continue;
        }
        if (column >= fields.size()) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": missing column " +
                                     std::to_string(column + 1));
        }
        const std::string cell = trim(fields[column]);
        double v = 0.0;
        const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (cell.empty() || res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": '" + cell +
                                     "' is not a number");
        }
        out.push_back(v);
    }
    if (!have_header) {
        throw std::runtime_error("input is empty (a header row is required)");
    }
    if (out.empty()) {
        throw std::runtime_error("input has a header but no observations");
    }
    return out;
}

std::vector<double> read_series_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    try {
        return read_series_csv(in);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_series_csv(std::ostream& out, const std::vector<double>& values) {
    out << "x\n";
    for (double v : values) {
        out << format_double(v) << '\n';
    }
}

void write_results_csv(std::ostream& out, const std::vector<MetricRecord>& records) {
    out << kResultsHeader << '\n';
    for (const MetricRecord& r : records) {
        out << r.spec_id << ',' << format_double(r.spec.ar()) << ',' << format_double(r.spec.ma())
            << ',' << to_string(r.estimator) << ',' << to_string(r.parameter) << ','
            << (r.mean_adaptive_length ? format_double(*r.mean_adaptive_length) : std::string())
            << ',' << format_double(r.truth) << ',' << format_double(r.bias) << ','
            << format_double(r.variance) << ',' << format_double(r.mse) << '\n';
    }
}

}  // namespace lrv::cli

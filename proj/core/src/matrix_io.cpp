#include "privcap/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "privcap/error.hpp"

namespace privcap {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view s, std::string_view context) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
        throw ParseError("cannot parse number '" + std::string(s) + "' in " + std::string(context));
    }
    return value;
}

std::size_t positive_size(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() <= 0) {
        throw ParseError(std::string("matrix JSON: '") + key + "' must be a positive integer");
    }
    return j.at(key).get<std::size_t>();
}

std::vector<double> real_array(const json& j, const char* key) {
    if (!j.at(key).is_array()) throw ParseError(std::string("matrix JSON: '") + key + "' must be an array");
    std::vector<double> out;
    out.reserve(j.at(key).size());
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) throw ParseError(std::string("matrix JSON: non-numeric entry in '") + key + "'");
        out.push_back(v.get<double>());
    }
    return out;
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("matrix JSON: expected an object");
    const std::size_t rows = positive_size(j, "rows");
    const std::size_t cols = positive_size(j, "cols");
    if (!j.contains("re")) throw ParseError("matrix JSON: missing 're'");
    const auto re = real_array(j, "re");
    const auto im = j.contains("im") ? real_array(j, "im") : std::vector<double>(re.size(), 0.0);
    if (re.size() != rows * cols || im.size() != rows * cols) {
        throw ParseError("matrix JSON: expected " + std::to_string(rows * cols) +
                         " entries in 're' and 'im'");
    }
    std::vector<Complex> data(rows * cols);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = {re[i], im[i]};
    try {
        return ComplexMatrix(rows, cols, std::move(data));
    } catch (const DomainError& e) {
        throw ParseError(std::string("matrix JSON: ") + e.what());
    }
}

BlockPartition partition_from_json(const json& j) {
    auto get = [&](const char* key) -> std::size_t {
        if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() <= 0) {
            throw ParseError(std::string("partition: '") + key + "' must be a positive integer");
        }
        return j.at(key).get<std::size_t>();
    };
    return {get("m"), get("k"), get("l")};
}

json parse_json(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

}  // namespace

MatrixDocument parse_matrix_json(std::string_view text) {
    const json j = parse_json(text, "matrix JSON");
    try {
        MatrixDocument doc{matrix_from_json(j), std::nullopt};
        if (j.contains("partition")) {
            doc.partition = partition_from_json(j.at("partition"));
        } else if (j.contains("m") || j.contains("k") || j.contains("l")) {
            doc.partition = partition_from_json(j);
        }
        return doc;
    } catch (const json::exception& e) {
        throw ParseError(std::string("matrix JSON: ") + e.what());
    }
}

Complex parse_complex_cell(std::string_view cell) {
    std::string_view s = trim(cell);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
    if (s.empty()) throw ParseError("empty matrix cell");
    if (s.back() != 'j' && s.back() != 'i') return {parse_real(s, "matrix cell"), 0.0};

    s.remove_suffix(1);
    // Split at the last sign that is not an exponent sign and not leading.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto imag_part = [](std::string_view t) {
        t = trim(t);
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t, "matrix cell");
    };
    if (split == std::string_view::npos) return {0.0, imag_part(s)};
    return {parse_real(s.substr(0, split), "matrix cell"), imag_part(s.substr(split))};
}

ComplexMatrix parse_matrix_csv(std::string_view text) {
    std::vector<Complex> data;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        const std::string_view row = trim(line);
        if (row.empty() || row.front() == '#') continue;
        std::size_t count = 0;
        std::size_t start = 0;
        while (true) {
            const auto comma = row.find(',', start);
            data.push_back(parse_complex_cell(row.substr(start, comma - start)));
            ++count;
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (rows == 0) cols = count;
        else if (count != cols) {
            throw ParseError("matrix CSV: row " + std::to_string(rows + 1) + " has " +
                             std::to_string(count) + " cells, expected " + std::to_string(cols));
        }
        ++rows;
    }
    if (rows == 0) throw ParseError("matrix CSV: no rows");
    return ComplexMatrix(rows, cols, std::move(data));
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

MatrixDocument load_matrix_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    if (path.extension() == ".csv") return {parse_matrix_csv(text), std::nullopt};
    return parse_matrix_json(text);
}

std::string matrix_to_json(const ComplexMatrix& m) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    json re = json::array();
    json im = json::array();
    for (const auto& z : m.data()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j.dump();
}

std::vector<double> parse_spectrum(std::string_view text) {
    const std::string_view s = trim(text);
    if (s.empty()) throw ParseError("spectrum: empty input");
    std::vector<double> out;
    if (s.front() == '[') {
        const json j = parse_json(s, "spectrum JSON");
        for (const auto& v : j) {
            if (!v.is_number()) throw ParseError("spectrum JSON: entries must be numbers");
            out.push_back(v.get<double>());
        }
    } else {
        std::size_t start = 0;
        while (true) {
            const auto comma = s.find(',', start);
            out.push_back(parse_real(s.substr(start, comma - start), "spectrum"));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
    }
    if (out.empty()) throw ParseError("spectrum: no values");
    return out;
}

}  // namespace privcap

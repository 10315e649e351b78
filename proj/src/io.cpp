#include "difftsp/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace difftsp {

namespace {

using ordered_json = nlohmann::ordered_json;

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

Instance parse_instance_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte);
        throw MalformedInputError("JSON parse error at line " + std::to_string(line) + ", column " +
                                  std::to_string(col) + ": " + e.what());
    }
    try {
        const std::string name = j.value("name", std::string{});
        const int n = j.at("n").get<int>();
        const int scale = j.value("scale", 0);
        const auto& rows = j.at("weights");
        if (!rows.is_array() || static_cast<int>(rows.size()) != n - 1)
            throw MalformedInputError("weights must hold n-1 lower-triangular rows");
        std::vector<Weight> w(static_cast<std::size_t>(n) * n, 0);
        for (int i = 1; i < n; ++i) {
            const auto& row = rows[i - 1];
            if (!row.is_array() || static_cast<int>(row.size()) != i)
                throw MalformedInputError("weights row " + std::to_string(i) + " must have " + std::to_string(i) +
                                          " entries");
            for (int k = 0; k < i; ++k) {
                if (!row[k].is_number_integer())
                    throw MalformedInputError("weights must be integers (scale carries the decimal shift)");
                const Weight x = row[k].get<Weight>();
                w[static_cast<std::size_t>(i) * n + k] = x;
                w[static_cast<std::size_t>(k) * n + i] = x;
            }
        }
        return Instance(n, std::move(w), name, scale);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedInputError(std::string("bad instance file: ") + e.what());
    }
}

std::string serialize_instance_json(const Instance& inst) {
    ordered_json j;
    j["name"] = inst.name();
    j["n"] = inst.size();
    j["scale"] = inst.scale();
    ordered_json rows = ordered_json::array();
    for (int i = 1; i < inst.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (int k = 0; k < i; ++k) row.push_back(inst.weight(i, k));
        rows.push_back(std::move(row));
    }
    j["weights"] = std::move(rows);
    return j.dump(2) + "\n";
}

Instance parse_tsplib(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string name = "tsplib";
    std::string type, ew_type, ew_format;
    int n = -1;
    std::vector<Weight> numbers;
    bool in_weights = false;

    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };

    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (in_weights) {
            if (line == "EOF") break;
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) {
                if (tok == "EOF") {
                    in_weights = false;
                    break;
                }
                try {
                    std::size_t used = 0;
                    numbers.push_back(std::stoll(tok, &used));
                    if (used != tok.size()) throw std::invalid_argument(tok);
                } catch (const std::exception&) {
                    throw MalformedInputError("TSPLIB: non-integer weight entry '" + tok + "'");
                }
            }
            continue;
        }
        const std::size_t colon = line.find(':');
        std::string key = trim(colon == std::string::npos ? line : line.substr(0, colon));
        std::string value = colon == std::string::npos ? "" : trim(line.substr(colon + 1));
        if (key == "NAME") name = value;
        else if (key == "TYPE") type = value;
        else if (key == "DIMENSION") n = std::stoi(value);
        else if (key == "EDGE_WEIGHT_TYPE") ew_type = value;
        else if (key == "EDGE_WEIGHT_FORMAT") ew_format = value;
        else if (key == "EDGE_WEIGHT_SECTION") in_weights = true;
        else if (key == "EOF") break;
        // COMMENT and unknown keys are ignored.
    }

    if (!type.empty() && type != "TSP") throw MalformedInputError("TSPLIB: TYPE must be TSP, got '" + type + "'");
    if (ew_type != "EXPLICIT")
        throw MalformedInputError("TSPLIB: only EDGE_WEIGHT_TYPE EXPLICIT is supported (no approximation), got '" +
                                  ew_type + "'");
    if (n < 2) throw MalformedInputError("TSPLIB: missing or bad DIMENSION");

    std::vector<Weight> w(static_cast<std::size_t>(n) * n, 0);
    if (ew_format == "FULL_MATRIX") {
        if (numbers.size() != static_cast<std::size_t>(n) * n)
            throw MalformedInputError("TSPLIB: FULL_MATRIX needs n*n entries, got " + std::to_string(numbers.size()));
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) w[static_cast<std::size_t>(u) * n + v] = numbers[static_cast<std::size_t>(u) * n + v];
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (w[static_cast<std::size_t>(u) * n + v] != w[static_cast<std::size_t>(v) * n + u])
                    throw MalformedInputError("TSPLIB: FULL_MATRIX is not symmetric at (" + std::to_string(u) + "," +
                                              std::to_string(v) + ")");
    } else if (ew_format == "LOWER_DIAG_ROW") {
        if (numbers.size() != static_cast<std::size_t>(n) * (n + 1) / 2)
            throw MalformedInputError("TSPLIB: LOWER_DIAG_ROW needs n(n+1)/2 entries, got " +
                                      std::to_string(numbers.size()));
        std::size_t idx = 0;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v <= u; ++v, ++idx) {
                w[static_cast<std::size_t>(u) * n + v] = numbers[idx];
                w[static_cast<std::size_t>(v) * n + u] = numbers[idx];
            }
    } else {
        throw MalformedInputError("TSPLIB: unsupported EDGE_WEIGHT_FORMAT '" + ew_format +
                                  "' (FULL_MATRIX or LOWER_DIAG_ROW)");
    }
    return Instance(n, std::move(w), name);
}

Instance load_instance_file(const std::string& path) {
    const std::string text = read_file(path);
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        return c == '{' ? parse_instance_json(text) : parse_tsplib(text);
    }
    throw MalformedInputError("empty instance file: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedInputError("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MalformedInputError("cannot write file: " + path);
    out << content;
}

std::string serialize_run_report(const RunReport& r) {
    ordered_json j;
    j["schema"] = 1;
    j["instance"] = r.instance;
    j["n"] = r.n;
    j["algorithm"] = r.algorithm;
    j["apx"] = r.apx;
    j["tour"] = r.tour;
    j["candidates"] = r.candidates;
    if (r.opt) j["opt"] = *r.opt;
    if (r.wor) j["wor"] = *r.wor;
    if (r.rho) j["rho"] = *r.rho;
    if (r.guarantee) j["guarantee"] = *r.guarantee;
    if (r.guarantee_pass) j["guarantee_pass"] = *r.guarantee_pass;
    if (r.audit_ok) {
        j["audit_ok"] = *r.audit_ok;
        j["audit_failures"] = r.audit_failures;
    }
    j["seed"] = r.seed;
    j["wall_ms"] = r.wall_ms;
    return j.dump(2) + "\n";
}

}  // namespace difftsp

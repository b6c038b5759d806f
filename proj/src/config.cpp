#include "rfis/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rfis {

namespace {

using ordered_json = nlohmann::ordered_json;

Matrix parse_matrix(const ordered_json& j, const std::string& field, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows) {
        std::ostringstream os;
        os << "field '" << field << "' must be an array of " << rows << " rows";
        throw Error(ErrorCode::ParseError, os.str());
    }
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols) {
            std::ostringstream os;
            os << "field '" << field << "' row " << i << " must hold " << cols << " numbers";
            throw Error(ErrorCode::ParseError, os.str());
        }
        for (int k = 0; k < cols; ++k) {
            if (!row[k].is_number()) {
                std::ostringstream os;
                os << "field '" << field << "' entry (" << i << "," << k << ") is not a number";
                throw Error(ErrorCode::ParseError, os.str());
            }
            m(i, k) = row[k].get<double>();
        }
    }
    return m;
}

std::vector<int> parse_index_list(const ordered_json& j, const std::string& field, int count) {
    if (!j.is_array() || static_cast<int>(j.size()) != count) {
        std::ostringstream os;
        os << "field '" << field << "' must be an array of " << count << " integers";
        throw Error(ErrorCode::ParseError, os.str());
    }
    std::vector<int> out(count);
    for (int i = 0; i < count; ++i) {
        if (!j[i].is_number_integer()) {
            std::ostringstream os;
            os << "field '" << field << "' entry " << i << " is not an integer";
            throw Error(ErrorCode::ParseError, os.str());
        }
        out[i] = j[i].get<int>();
    }
    return out;
}

const ordered_json& require_field(const ordered_json& j, const std::string& field) {
    auto it = j.find(field);
    if (it == j.end())
        throw Error(ErrorCode::ParseError, "missing field '" + field + "'");
    return *it;
}

}  // namespace

RfisConfig parse_config(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");

    RfisConfig config;
    const auto& n_field = require_field(j, "N");
    const auto& k_field = require_field(j, "K");
    if (!n_field.is_number_integer() || !k_field.is_number_integer())
        throw Error(ErrorCode::ParseError, "fields 'N' and 'K' must be integers");
    config.N = n_field.get<int>();
    config.K = k_field.get<int>();
    if (config.N < 2) throw Error(ErrorCode::ParseError, "field 'N' must be at least 2");
    if (config.K < 2) throw Error(ErrorCode::ParseError, "field 'K' must be at least 2");

    config.z = parse_matrix(require_field(j, "z"), "z", config.N + 1, config.N + 1);
    config.s = parse_matrix(require_field(j, "s"), "s", config.N + 1, config.N + 1);
    config.xprime_idx = parse_index_list(require_field(j, "xprime_idx"), "xprime_idx", config.N + 1);
    config.yprime_idx = parse_index_list(require_field(j, "yprime_idx"), "yprime_idx", config.N + 1);

    const auto& parts = require_field(j, "partition");
    if (!parts.is_array() || parts.empty())
        throw Error(ErrorCode::ParseError, "field 'partition' must be a nonempty array of parts");
    for (std::size_t r = 0; r < parts.size(); ++r) {
        const auto& part = parts[r];
        if (!part.is_array() || part.empty()) {
            std::ostringstream os;
            os << "partition part " << r + 1 << " must be a nonempty array of [i,j] pairs";
            throw Error(ErrorCode::ParseError, os.str());
        }
        std::vector<Cell> cells;
        for (const auto& pair : part) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
                !pair[1].is_number_integer()) {
                std::ostringstream os;
                os << "partition part " << r + 1 << " holds a malformed cell pair";
                throw Error(ErrorCode::ParseError, os.str());
            }
            cells.push_back({pair[0].get<int>(), pair[1].get<int>()});
        }
        config.partition.push_back(std::move(cells));
    }

    if (auto it = j.find("name"); it != j.end() && it->is_string())
        config.name = it->get<std::string>();
    return config;
}

RfisConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str());
}

std::string dump_config(const RfisConfig& config) {
    ordered_json j;
    if (!config.name.empty()) j["name"] = config.name;
    j["N"] = config.N;
    j["K"] = config.K;
    j["xprime_idx"] = config.xprime_idx;
    j["yprime_idx"] = config.yprime_idx;
    auto matrix_rows = [](const Matrix& m) {
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < m.rows(); ++i) {
            ordered_json row = ordered_json::array();
            for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    j["z"] = matrix_rows(config.z);
    j["s"] = matrix_rows(config.s);
    ordered_json parts = ordered_json::array();
    for (const auto& part : config.partition) {
        ordered_json cells = ordered_json::array();
        for (const Cell& c : part) cells.push_back(ordered_json::array({c.i, c.j}));
        parts.push_back(std::move(cells));
    }
    j["partition"] = std::move(parts);
    return j.dump(2) + "\n";
}

Scenario build_scenario(const RfisConfig& config) {
    Scenario scenario;
    scenario.data = build_uniform_data(config.N, config.N, config.z);
    scenario.maps = build_address_maps(scenario.data, config.xprime_idx, config.yprime_idx);
    scenario.rfis = make_rfis(scenario.data, scenario.maps, make_scaling(config.s));
    scenario.partition = make_partition(config.N, config.N, config.partition);
    scenario.K = config.K;
    return scenario;
}

std::string paper_example_json(bool corrected) {
    RfisConfig config;
    config.name = corrected ? "paper-example" : "paper-example-original";
    config.N = 4;
    config.K = 2;
    config.xprime_idx = {0, 2, 0, 2, 0};
    config.yprime_idx = {2, 4, 2, 0, 2};
    config.z = Matrix::from_rows({{2, 3, 2, 1, 2},
                                  {2, 2, 3, 1, 3},
                                  {1, 3, 2, 3, 1},
                                  {3, 2, 4, 2, 0},
                                  {2, 3, 2, 4, 4}});
    config.s = Matrix::from_rows({{0.85, 0.9, 0.95, 0.9, 0.9},
                                  {corrected ? 0.1 : 0.2, 0.45, 0.8, 0.7, 0.6},
                                  {0, 0, 0, 0.5, 0.95},
                                  {-0.4, -0.2, 0, 0.3, 0.6},
                                  {-0.8, -0.4, 0, 0.1, 0.25}});
    config.partition = {
        {{1, 1}, {1, 2}, {2, 1}, {2, 2}},
        {{1, 3}, {1, 4}, {2, 3}, {2, 4}},
        {{3, 1}, {3, 2}, {3, 3}, {3, 4}, {4, 1}, {4, 2}, {4, 3}, {4, 4}},
    };
    return dump_config(config);
}

}  // namespace rfis

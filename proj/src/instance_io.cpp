#include "locaos/instance_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "locaos/text.hpp"

namespace locaos {
namespace {

bool starts_keyword(const std::string& line) {
    return !line.empty() && std::isalpha(static_cast<unsigned char>(line[0]));
}

struct Line {
    int number;
    std::string text;
};

int parse_int(const std::string& s, int line, const std::string& what) {
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (trim(s.substr(used)).size() > 0) throw std::invalid_argument(s);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw ParseError("expected integer for " + what + ", got '" + s + "'", line);
    }
}

}  // namespace

Instance parse_cvrplib(std::istream& in, DistanceMode mode) {
    std::vector<Line> lines;
    {
        std::string raw;
        int number = 0;
        while (std::getline(in, raw)) {
            ++number;
            std::string t = trim(raw);
            if (!t.empty()) lines.push_back({number, std::move(t)});
        }
    }

    std::string name = "unnamed";
    std::optional<int> dimension;
    std::optional<int> capacity;
    std::optional<int> vehicles;
    bool weight_type_seen = false;
    std::vector<std::optional<Point>> coords;
    std::vector<std::optional<int>> demands;
    std::vector<int> demand_lines;
    std::vector<int> depots;
    bool coord_section = false;
    bool demand_section = false;
    bool depot_section = false;
    int last_line = lines.empty() ? 0 : lines.back().number;

    auto require_dimension = [&](const Line& l) {
        if (!dimension) throw ParseError("section before DIMENSION", l.number);
        return *dimension;
    };

    std::size_t i = 0;
    while (i < lines.size()) {
        const Line& l = lines[i];
        std::string key;
        std::string value;
        const auto colon = l.text.find(':');
        if (colon != std::string::npos) {
            key = trim(l.text.substr(0, colon));
            value = trim(l.text.substr(colon + 1));
        } else {
            std::istringstream ss(l.text);
            ss >> key;
            std::getline(ss, value);
            value = trim(value);
        }
        ++i;

        if (key == "EOF") break;
        if (key == "NAME") {
            name = value;
        } else if (key == "DIMENSION") {
            dimension = parse_int(value, l.number, "DIMENSION");
            if (*dimension < 2) throw ParseError("DIMENSION must be at least 2", l.number);
        } else if (key == "CAPACITY") {
            capacity = parse_int(value, l.number, "CAPACITY");
            if (*capacity <= 0) throw ParseError("CAPACITY must be positive", l.number);
        } else if (key == "VEHICLES") {
            vehicles = parse_int(value, l.number, "VEHICLES");
        } else if (key == "EDGE_WEIGHT_TYPE") {
            if (value != "EUC_2D") {
                throw ParseError("unsupported EDGE_WEIGHT_TYPE '" + value + "' (only EUC_2D)", l.number);
            }
            weight_type_seen = true;
        } else if (key == "TYPE" || key == "COMMENT") {
            // informational
        } else if (key == "NODE_COORD_SECTION" || key == "DEMAND_SECTION") {
            const int n = require_dimension(l);
            const bool is_coord = key == "NODE_COORD_SECTION";
            if (is_coord) {
                coord_section = true;
                coords.assign(static_cast<std::size_t>(n), std::nullopt);
            } else {
                demand_section = true;
                demands.assign(static_cast<std::size_t>(n), std::nullopt);
                demand_lines.assign(static_cast<std::size_t>(n), l.number);
            }
            int count = 0;
            while (i < lines.size() && !starts_keyword(lines[i].text)) {
                const Line& e = lines[i++];
                std::istringstream ss(e.text);
                std::string id_tok;
                ss >> id_tok;
                const int id = parse_int(id_tok, e.number, key + " node id");
                if (id < 1 || id > n) {
                    throw ParseError(key + ": node id " + std::to_string(id) +
                                         " outside 1.." + std::to_string(n) + " (DIMENSION mismatch)",
                                     e.number);
                }
                if (is_coord) {
                    double x = 0;
                    double y = 0;
                    if (!(ss >> x >> y)) throw ParseError("malformed coordinate entry", e.number);
                    if (coords[id - 1]) throw ParseError("duplicate node id " + id_tok, e.number);
                    coords[id - 1] = Point{x, y};
                } else {
                    std::string d_tok;
                    if (!(ss >> d_tok)) throw ParseError("malformed demand entry", e.number);
                    if (demands[id - 1]) throw ParseError("duplicate node id " + id_tok, e.number);
                    demands[id - 1] = parse_int(d_tok, e.number, "demand");
                    demand_lines[id - 1] = e.number;
                }
                ++count;
            }
            if (count != n) {
                throw ParseError(key + " has " + std::to_string(count) + " entries but DIMENSION is " +
                                     std::to_string(n) + " (DIMENSION mismatch)",
                                 l.number);
            }
        } else if (key == "DEPOT_SECTION") {
            const int n = require_dimension(l);
            depot_section = true;
            bool terminated = false;
            while (i < lines.size() && !starts_keyword(lines[i].text)) {
                const Line& e = lines[i++];
                std::istringstream ss(e.text);
                std::string tok;
                while (ss >> tok) {
                    const int id = parse_int(tok, e.number, "depot id");
                    if (id == -1) {
                        terminated = true;
                        break;
                    }
                    if (id < 1 || id > n) throw ParseError("depot id out of range", e.number);
                    depots.push_back(id - 1);
                }
                if (terminated) break;
            }
            if (depots.empty()) throw ParseError("DEPOT_SECTION lists no depot", l.number);
            if (depots.size() > 1) throw ParseError("multiple depots are not supported", l.number);
        } else {
            throw ParseError("unknown keyword '" + key + "'", l.number);
        }
    }

    if (!dimension) throw ParseError("missing DIMENSION", last_line);
    if (!capacity) throw ParseError("missing CAPACITY", last_line);
    if (!weight_type_seen) throw ParseError("missing EDGE_WEIGHT_TYPE", last_line);
    if (!coord_section) throw ParseError("missing NODE_COORD_SECTION", last_line);
    if (!demand_section) throw ParseError("missing DEMAND_SECTION", last_line);
    if (!depot_section) throw ParseError("missing DEPOT_SECTION", last_line);

    std::vector<Point> pts;
    std::vector<int> dem;
    for (int v = 0; v < *dimension; ++v) {
        pts.push_back(*coords[v]);
        dem.push_back(*demands[v]);
    }
    const int depot = depots.front();
    if (dem[depot] != 0) throw ParseError("depot demand must be 0", demand_lines[depot]);
    for (int v = 0; v < *dimension; ++v) {
        if (dem[v] < 0) throw ParseError("negative demand at node " + std::to_string(v + 1), demand_lines[v]);
        if (dem[v] > *capacity) {
            throw ParseError("demand " + std::to_string(dem[v]) + " of node " + std::to_string(v + 1) +
                                 " exceeds capacity " + std::to_string(*capacity),
                             demand_lines[v]);
        }
    }
    if (!vehicles) {
        static const std::regex k_suffix(R"(-k(\d+)$)");
        std::smatch m;
        if (std::regex_search(name, m, k_suffix)) vehicles = std::stoi(m[1]);
    }
    if (vehicles && *vehicles <= 0) vehicles.reset();
    return Instance(name, depot, std::move(pts), std::move(dem), *capacity, vehicles, mode);
}

Instance parse_cvrplib_string(const std::string& text, DistanceMode mode) {
    std::istringstream in(text);
    return parse_cvrplib(in, mode);
}

void write_cvrplib(std::ostream& out, const Instance& instance, const std::vector<std::string>& comments) {
    out << "NAME : " << instance.name() << "\n";
    for (const auto& c : comments) out << "COMMENT : " << c << "\n";
    out << "TYPE : CVRP\n";
    out << "DIMENSION : " << instance.num_nodes() << "\n";
    if (instance.min_vehicles()) out << "VEHICLES : " << *instance.min_vehicles() << "\n";
    out << "CAPACITY : " << instance.capacity() << "\n";
    out << "EDGE_WEIGHT_TYPE : EUC_2D\n";
    out << "NODE_COORD_SECTION\n";
    for (int v = 0; v < instance.num_nodes(); ++v) {
        const Point& p = instance.coords()[v];
        out << v + 1 << " " << format_double(p.x) << " " << format_double(p.y) << "\n";
    }
    out << "DEMAND_SECTION\n";
    for (int v = 0; v < instance.num_nodes(); ++v) {
        out << v + 1 << " " << instance.demand(v) << "\n";
    }
    out << "DEPOT_SECTION\n";
    out << " " << instance.depot() + 1 << "\n";
    out << " -1\n";
    out << "EOF\n";
}

std::string instance_to_json(const Instance& instance) {
    nlohmann::ordered_json j;
    j["name"] = instance.name();
    j["depot"] = instance.depot();
    j["capacity"] = instance.capacity();
    j["min_vehicles"] = instance.min_vehicles() ? nlohmann::ordered_json(*instance.min_vehicles())
                                                : nlohmann::ordered_json(nullptr);
    auto coords = nlohmann::ordered_json::array();
    for (const auto& p : instance.coords()) coords.push_back({p.x, p.y});
    j["coords"] = std::move(coords);
    j["demands"] = instance.demands();
    return j.dump(1) + "\n";
}

Instance instance_from_json(const std::string& text, DistanceMode mode) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        std::vector<Point> pts;
        for (const auto& c : j.at("coords")) pts.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
        std::optional<int> vehicles;
        if (!j.at("min_vehicles").is_null()) vehicles = j.at("min_vehicles").get<int>();
        return Instance(j.at("name").get<std::string>(), j.at("depot").get<int>(), std::move(pts),
                        j.at("demands").get<std::vector<int>>(), j.at("capacity").get<int>(), vehicles,
                        mode);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("instance json: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("instance json: ") + e.what());
    }
}

Instance load_instance(const std::filesystem::path& path, DistanceMode mode) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        if (path.extension() == ".json") {
            std::stringstream ss;
            ss << in.rdbuf();
            return instance_from_json(ss.str(), mode);
        }
        return parse_cvrplib(in, mode);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

}  // namespace locaos

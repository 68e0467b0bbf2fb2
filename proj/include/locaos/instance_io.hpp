#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "locaos/instance.hpp"

namespace locaos {

// Reads the CVRPLIB/TSPLIB keyword format (EUC_2D only). Node ids in the file
// are 1-based and are re-based to 0 internally.
Instance parse_cvrplib(std::istream& in, DistanceMode mode = DistanceMode::exact);
Instance parse_cvrplib_string(const std::string& text, DistanceMode mode = DistanceMode::exact);

// Writes coordinates with 17 significant digits so that parsing the output
// reproduces the instance exactly. Each comment becomes a COMMENT line.
void write_cvrplib(std::ostream& out, const Instance& instance, const std::vector<std::string>& comments = {});

// JSON mirror of the instance fields with a fixed key order.
std::string instance_to_json(const Instance& instance);
Instance instance_from_json(const std::string& text, DistanceMode mode = DistanceMode::exact);

// Dispatches on extension: ".json" is read as JSON, anything else as CVRPLIB.
Instance load_instance(const std::filesystem::path& path, DistanceMode mode = DistanceMode::exact);

}  // namespace locaos

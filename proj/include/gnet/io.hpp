#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gnet/core.hpp"
#include "gnet/sim.hpp"

namespace gnet {

/// A service file: the service itself plus the intermediate services a
/// composition synthesized, so that its ISP references resolve on reload.
struct ServiceFile {
  WebService service;
  std::vector<WebService> embedded;
};

ServiceFile parse_service(std::string_view json_text);
std::string dump_service(const ServiceFile& file);
BlockFragment parse_block(std::string_view json_text);
std::string dump_block(const BlockFragment& block);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

ServiceFile load_service(const std::filesystem::path& path);
void save_service(const std::filesystem::path& path, const ServiceFile& file);
BlockFragment load_block(const std::filesystem::path& path);

/// Every *.json file of `dir`; files with an "entries" key are blocks.
Registry load_registry(const std::filesystem::path& dir);
/// Adds `file.service` and its embedded services when not already present.
void register_all(Registry& reg, const ServiceFile& file);

std::string trace_json(const std::vector<FiringEvent>& trace);

}  // namespace gnet

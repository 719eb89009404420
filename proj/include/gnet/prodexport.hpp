#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gnet/analysis.hpp"
#include "gnet/core.hpp"

namespace gnet {

struct ProdArc {
  std::string place;
  std::vector<std::string> fields;  // rendered tuple members

  bool operator==(const ProdArc&) const = default;
};

struct ProdTransition {
  std::string name;
  std::vector<ProdArc> in;
  std::vector<ProdArc> out;
  std::string gate;  // empty when unconditioned

  bool operator==(const ProdTransition&) const = default;
};

struct ProdPlace {
  std::string name;
  std::vector<std::vector<std::string>> marking;  // one rendered tuple per token

  bool operator==(const ProdPlace&) const = default;
};

struct ProdDoc {
  std::vector<ProdPlace> places;
  std::vector<ProdTransition> transitions;

  bool operator==(const ProdDoc&) const = default;
};

ProdDoc to_prod_doc(const FlatNet& flat);
std::string render_prod(const ProdDoc& doc);
std::string export_prod(const FlatNet& flat);

std::string export_dot(const WebService& ws);

}  // namespace gnet

#include "gnet/prodexport.hpp"

#include <algorithm>
#include <set>

#include "gnet/error.hpp"

namespace gnet {

namespace {

std::vector<std::string> token_tuple(const Token& t, const std::vector<std::string>& signature) {
  std::vector<std::string> out;
  for (const auto& f : signature) {
    auto it = t.fields.find(f);
    if (it != t.fields.end()) out.push_back(render_value(it->second));
  }
  for (const auto& [name, value] : t.fields)
    if (std::find(signature.begin(), signature.end(), name) == signature.end())
      out.push_back(render_value(value));
  return out;
}

std::string tuple(const std::vector<std::string>& fields) {
  std::string out = "<.";
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ", ";
    out += fields[i];
  }
  return out + ".>";
}

std::string arcs(const std::vector<ProdArc>& list) {
  std::string out = "{ ";
  for (const auto& a : list) out += a.place + ": " + tuple(a.fields) + "; ";
  return out + "}";
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ProdDoc to_prod_doc(const FlatNet& flat) {
  ProdDoc doc;
  std::set<std::string> declared;
  for (const auto& p : flat.places) {
    ProdPlace pp{p.id, {}};
    auto it = flat.initial.find(p.id);
    if (it != flat.initial.end())
      for (const auto& t : it->second) pp.marking.push_back(token_tuple(t, p.signature));
    declared.insert(p.id);
    doc.places.push_back(std::move(pp));
  }
  for (const auto& [place, _] : flat.initial)
    if (!declared.count(place)) throw Error(Errc::UndeclaredPlaceReference, place);

  for (const auto& t : flat.transitions) {
    ProdTransition pt{t.id, {}, {}, t.gate.is_always() ? std::string() : print(t.gate)};
    for (const auto& in : t.inputs) {
      if (!declared.count(in.place))
        throw Error(Errc::UndeclaredPlaceReference, in.place + " in " + t.id);
      pt.in.push_back({in.place, in.vars});
    }
    for (const auto& out : t.outputs) {
      if (!declared.count(out.place))
        throw Error(Errc::UndeclaredPlaceReference, out.place + " in " + t.id);
      ProdArc a{out.place, {}};
      for (const auto& [_, e] : out.entries) a.fields.push_back(print(e));
      pt.out.push_back(std::move(a));
    }
    doc.transitions.push_back(std::move(pt));
  }
  return doc;
}

std::string render_prod(const ProdDoc& doc) {
  std::string out;
  for (const auto& p : doc.places) {
    out += "#place " + p.name;
    if (!p.marking.empty()) {
      out += " mk(";
      for (std::size_t i = 0; i < p.marking.size(); ++i) {
        if (i) out += " + ";
        out += tuple(p.marking[i]);
      }
      out += ")";
    }
    out += "\n";
  }
  for (const auto& t : doc.transitions) {
    out += "#trans " + t.name + "\n";
    out += "in " + arcs(t.in) + "\n";
    out += "out " + arcs(t.out) + "\n";
    out += t.gate.empty() ? std::string("gate ;\n") : "gate " + t.gate + ";\n";
    out += "#endtr\n";
  }
  return out;
}

std::string export_prod(const FlatNet& flat) { return render_prod(to_prod_doc(flat)); }

std::string export_dot(const WebService& ws) {
  const auto& is = ws.net.is;
  std::string out = "digraph " + quote(ws.name) + " {\n  rankdir=LR;\n";
  for (const auto& p : is.places) {
    std::string shape = "circle";
    if (p.kind == PlaceKind::Goal) shape = "doublecircle";
    if (p.kind == PlaceKind::InstantiatedSwitch) shape = "ellipse";
    std::string label = p.id;
    auto l = is.labels.find(p.id);
    if (l != is.labels.end()) label += "\n" + render_label(l->second);
    out += "  " + quote(p.id) + " [shape=" + shape + ", label=" + quote(label) + "];\n";
  }
  for (const auto& t : is.transitions) {
    std::string label = t.id;
    if (const Condition* c = is.condition(t.id)) label += "\n[" + print(*c) + "]";
    if (const ActionSeq* a = is.action(t.id)) label += "\n" + print(*a);
    out += "  " + quote(t.id) + " [shape=box, label=" + quote(label) + "];\n";
  }
  for (const auto& a : is.arcs) {
    out += "  " + quote(a.from) + " -> " + quote(a.to);
    if (const Inscription* ins = is.inscription(a)) out += " [label=" + quote(print_inscription(*ins)) + "]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace gnet

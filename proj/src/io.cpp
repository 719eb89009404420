#include "gnet/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gnet/error.hpp"

namespace gnet {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(Errc::InvalidModel, msg); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::string text_or(const json& j, const char* key, std::string fallback = {}) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  if (!j.at(key).is_string()) bad(std::string("field '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

Value value_from(const json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return j.get<std::string>();
  bad("unsupported value " + j.dump());
}

json value_to(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  return std::get<std::string>(v);
}

PlaceKind kind_from(const std::string& s) {
  if (s == "Normal" || s == "NP") return PlaceKind::Normal;
  if (s == "Goal" || s == "GP") return PlaceKind::Goal;
  if (s == "InstantiatedSwitch" || s == "ISP") return PlaceKind::InstantiatedSwitch;
  bad("unknown place kind " + s);
}

Label label_from(const json& j) {
  std::string kind = text(j, "kind");
  if (kind == "Op") return Label::operation(text(j, "op"));
  if (kind == "Tau") return Label::tau();
  if (kind == "Goal") return Label::goal();
  if (kind == "IspRef") return Label::isp(text(j, "service"), text(j, "method"));
  bad("unknown label kind " + kind);
}

json label_to(const Label& l) {
  switch (l.kind) {
    case Label::Kind::Op: return {{"kind", "Op"}, {"op", l.op}};
    case Label::Kind::Tau: return {{"kind", "Tau"}};
    case Label::Kind::Goal: return {{"kind", "Goal"}};
    case Label::Kind::IspRef: return {{"kind", "IspRef"}, {"service", l.service}, {"method", l.method}};
  }
  return {};
}

InternalStructure is_from(const json& j) {
  InternalStructure is;
  for (const auto& p : field(j, "places")) {
    Place pl{text(p, "id"), kind_from(text_or(p, "kind", "Normal")), text_or(p, "invokedGnet"),
             text_or(p, "usingMethod")};
    is.places.push_back(std::move(pl));
  }
  if (j.contains("transitions"))
    for (const auto& t : j.at("transitions"))
      is.transitions.push_back({t.is_string() ? t.get<std::string>() : text(t, "id")});
  if (j.contains("arcs"))
    for (const auto& a : j.at("arcs")) is.arcs.push_back({text(a, "from"), text(a, "to")});
  if (j.contains("inscriptions"))
    for (const auto& i : j.at("inscriptions"))
      is.inscriptions[{text(i, "from"), text(i, "to")}] = parse_inscription(text(i, "inscription"));
  if (j.contains("conditions"))
    for (const auto& [t, c] : j.at("conditions").items())
      is.conditions[t] = parse_condition(c.get<std::string>());
  if (j.contains("actions"))
    for (const auto& [t, a] : j.at("actions").items()) is.actions[t] = parse_action(a.get<std::string>());
  if (j.contains("labels"))
    for (const auto& [p, l] : j.at("labels").items()) is.labels[p] = label_from(l);
  return is;
}

json is_to(const InternalStructure& is) {
  json places = json::array();
  for (const auto& p : is.places) {
    json pj = {{"id", p.id}, {"kind", std::string(to_string(p.kind))}};
    if (p.kind == PlaceKind::InstantiatedSwitch || !p.invoked_gnet.empty() || !p.using_method.empty()) {
      pj["invokedGnet"] = p.invoked_gnet;
      pj["usingMethod"] = p.using_method;
    }
    places.push_back(std::move(pj));
  }
  json transitions = json::array();
  for (const auto& t : is.transitions) transitions.push_back(t.id);
  json arcs = json::array();
  for (const auto& a : is.arcs) arcs.push_back({{"from", a.from}, {"to", a.to}});
  json inscriptions = json::array();
  for (const auto& a : is.arcs) {
    if (const Inscription* ins = is.inscription(a))
      inscriptions.push_back({{"from", a.from}, {"to", a.to}, {"inscription", print_inscription(*ins)}});
  }
  json conditions = json::object();
  for (const auto& [t, c] : is.conditions) conditions[t] = print(c);
  json actions = json::object();
  for (const auto& [t, a] : is.actions) actions[t] = print(a);
  json labels = json::object();
  for (const auto& [p, l] : is.labels) labels[p] = label_to(l);
  return {{"places", places},           {"transitions", transitions}, {"arcs", arcs},
          {"inscriptions", inscriptions}, {"conditions", conditions},   {"actions", actions},
          {"labels", labels}};
}

WebService service_from(const json& j) {
  WebService ws;
  ws.name = text(j, "name");
  ws.desc = text_or(j, "desc");
  if (j.contains("loc") && !j.at("loc").is_null()) ws.loc = text(j, "loc");
  if (j.contains("url") && !j.at("url").is_null()) ws.url = text(j, "url");
  for (const auto& c : field(j, "componentServices")) ws.component_services.insert(c.get<std::string>());
  const json& net = field(j, "net");
  if (net.contains("gsp")) {
    const json& gsp = net.at("gsp");
    if (gsp.contains("methods")) {
      for (const auto& m : gsp.at("methods")) {
        MethodSpec ms;
        ms.name = text(m, "name");
        ms.description = text_or(m, "description");
        if (m.contains("params"))
          for (const auto& p : m.at("params")) ms.params.push_back({text(p, "name"), text_or(p, "description")});
        ms.init_place = text(m, "initPlace");
        for (const auto& g : field(m, "goalPlaces")) ms.goal_places.push_back(g.get<std::string>());
        ws.net.gsp.methods.push_back(std::move(ms));
      }
    }
    if (gsp.contains("attributes")) {
      for (const auto& a : gsp.at("attributes")) {
        AttributeSpec as;
        as.name = text(a, "name");
        auto type = parse_value_type(text(a, "valueType"));
        if (!type) bad("unknown value type for attribute " + as.name);
        as.type = *type;
        if (a.contains("initial") && !a.at("initial").is_null()) as.initial = value_from(a.at("initial"));
        if (a.contains("domain") && !a.at("domain").is_null()) {
          std::vector<Value> dom;
          for (const auto& v : a.at("domain")) dom.push_back(value_from(v));
          as.domain = std::move(dom);
        }
        ws.net.gsp.attributes.push_back(std::move(as));
      }
    }
  }
  ws.net.is = is_from(field(net, "is"));
  return ws;
}

json service_to(const WebService& ws) {
  json methods = json::array();
  for (const auto& m : ws.net.gsp.methods) {
    json params = json::array();
    for (const auto& p : m.params) params.push_back({{"name", p.name}, {"description", p.description}});
    methods.push_back({{"name", m.name},
                       {"description", m.description},
                       {"params", params},
                       {"initPlace", m.init_place},
                       {"goalPlaces", m.goal_places}});
  }
  json attributes = json::array();
  for (const auto& a : ws.net.gsp.attributes) {
    json aj = {{"name", a.name}, {"valueType", std::string(to_string(a.type))}};
    if (a.initial) aj["initial"] = value_to(*a.initial);
    if (a.domain) {
      json dom = json::array();
      for (const auto& v : *a.domain) dom.push_back(value_to(v));
      aj["domain"] = dom;
    }
    attributes.push_back(std::move(aj));
  }
  json cs = json::array();
  for (const auto& c : ws.component_services) cs.push_back(c);
  return {{"name", ws.name},
          {"desc", ws.desc},
          {"loc", ws.loc ? json(*ws.loc) : json(nullptr)},
          {"url", ws.url ? json(*ws.url) : json(nullptr)},
          {"componentServices", cs},
          {"net", {{"gsp", {{"methods", methods}, {"attributes", attributes}}}, {"is", is_to(ws.net.is)}}}};
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    bad(e.what());
  }
}

json token_to(const Token& t) {
  json j = json::object();
  for (const auto& [k, v] : t.fields) j[k] = value_to(v);
  return j;
}

}  // namespace

ServiceFile parse_service(std::string_view json_text) {
  json j = parse_json(json_text);
  return guarded([&] {
    ServiceFile f{service_from(j), {}};
    if (j.contains("embedded"))
      for (const auto& e : j.at("embedded")) f.embedded.push_back(service_from(e));
    return f;
  });
}

std::string dump_service(const ServiceFile& file) {
  json j = service_to(file.service);
  if (!file.embedded.empty()) {
    json e = json::array();
    for (const auto& s : file.embedded) e.push_back(service_to(s));
    j["embedded"] = e;
  }
  return j.dump(2) + "\n";
}

BlockFragment parse_block(std::string_view json_text) {
  json j = parse_json(json_text);
  return guarded([&] {
    BlockFragment b;
    b.name = text(j, "block");
    b.is = is_from(field(j, "is"));
    for (const auto& e : field(j, "entries")) b.entries.push_back(e.get<std::string>());
    for (const auto& x : field(j, "exits")) b.exits.push_back(x.get<std::string>());
    return b;
  });
}

std::string dump_block(const BlockFragment& block) {
  json j = {{"block", block.name}, {"is", is_to(block.is)}, {"entries", block.entries}, {"exits", block.exits}};
  return j.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(Errc::Io, "failed writing " + path.string());
}

ServiceFile load_service(const std::filesystem::path& path) { return parse_service(read_file(path)); }

void save_service(const std::filesystem::path& path, const ServiceFile& file) {
  write_file(path, dump_service(file));
}

BlockFragment load_block(const std::filesystem::path& path) { return parse_block(read_file(path)); }

Registry load_registry(const std::filesystem::path& dir) {
  Registry reg;
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw Error(Errc::Io, "not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::string body = read_file(f);
    json j = parse_json(body);
    if (j.contains("entries")) {
      reg.insert_block(parse_block(body));
    } else {
      ServiceFile sf = parse_service(body);
      reg.insert(sf.service);
      for (const auto& e : sf.embedded) reg.insert_if_absent(e);
    }
  }
  return reg;
}

void register_all(Registry& reg, const ServiceFile& file) {
  reg.insert_if_absent(file.service);
  for (const auto& e : file.embedded) reg.insert_if_absent(e);
}

std::string trace_json(const std::vector<FiringEvent>& trace) {
  json out = json::array();
  for (const auto& e : trace) {
    json binding = json::object();
    for (const auto& [k, v] : e.binding) binding[k] = value_to(v);
    json consumed = json::array();
    for (const auto& c : e.consumed) consumed.push_back({{"place", c.place}, {"token", token_to(c.token)}});
    json produced = json::array();
    for (const auto& p : e.produced) produced.push_back({{"place", p.place}, {"token", token_to(p.token)}});
    out.push_back({{"depth", e.depth},
                   {"transition", e.transition},
                   {"binding", binding},
                   {"consumed", consumed},
                   {"produced", produced}});
  }
  return out.dump(2) + "\n";
}

}  // namespace gnet

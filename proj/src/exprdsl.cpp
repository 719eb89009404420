#include "gnet/exprdsl.hpp"

#include <algorithm>
#include <cctype>

#include "gnet/algebra.hpp"
#include "gnet/error.hpp"

namespace gnet {

namespace {

using Kind = CompositionExpr::Kind;

struct Keyword {
  std::string_view text;
  Kind kind;
};

constexpr Keyword kKeywords[] = {
    {"seq", Kind::Seq},       {"alt", Kind::Alt},       {"iter", Kind::Iter},
    {"anyseq", Kind::AnySeq}, {"par", Kind::Par},       {"disc", Kind::Disc},
    {"select", Kind::Select}, {"refine", Kind::Refine}, {"replace", Kind::Replace},
};

bool ident_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '-' || c == '.' || u >= 0x80;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  CompositionExpr parse() {
    CompositionExpr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(pos_, msg); }

  void skip() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool accept(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  CompositionExpr expr() {
    CompositionExpr lhs = term();
    while (accept(">>")) lhs = CompositionExpr::node(Kind::Seq, {std::move(lhs), term()});
    return lhs;
  }

  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string quoted() {
    ++pos_;
    std::string out;
    while (pos_ < s_.size() && s_[pos_] != '"') {
      if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
      out += s_[pos_++];
    }
    if (pos_ >= s_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  std::string name() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '"') return quoted();
    std::string id = ident();
    if (id.empty()) fail("expected a name");
    return id;
  }

  CompositionExpr term() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (s_[pos_] == '(') {
      ++pos_;
      CompositionExpr e = expr();
      expect(")");
      return e;
    }
    if (s_[pos_] == '"') return CompositionExpr::ref(quoted());
    std::size_t start = pos_;
    std::string id = ident();
    if (id.empty()) fail("expected a service expression");
    std::size_t after = pos_;
    skip();
    bool call = pos_ < s_.size() && s_[pos_] == '(';
    pos_ = after;
    if (!call) return id == "empty" ? CompositionExpr::empty() : CompositionExpr::ref(id);
    auto kw = std::find_if(std::begin(kKeywords), std::end(kKeywords),
                           [&](const Keyword& k) { return k.text == id; });
    if (kw == std::end(kKeywords)) {
      pos_ = start;
      fail("unknown operator '" + id + "'");
    }
    expect("(");
    CompositionExpr out;
    out.kind = kw->kind;
    switch (kw->kind) {
      case Kind::Iter:
        out.args.push_back(expr());
        break;
      case Kind::Seq:
      case Kind::Alt:
      case Kind::AnySeq:
      case Kind::Par:
        out.args.push_back(expr());
        expect(",");
        out.args.push_back(expr());
        break;
      case Kind::Replace:
        out.args.push_back(expr());
        expect(",");
        out.args.push_back(expr());
        expect(",");
        out.args.push_back(expr());
        break;
      case Kind::Disc:
        out.args.push_back(expr());
        while (accept(",")) out.args.push_back(expr());
        expect(";");
        out.args.push_back(expr());
        break;
      case Kind::Select:
        out.args.push_back(expr());
        while (accept(",")) out.args.push_back(expr());
        break;
      case Kind::Refine:
        out.args.push_back(expr());
        expect(",");
        out.name = name();
        expect(",");
        out.block = name();
        break;
      default:
        break;
    }
    expect(")");
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string print_name(const std::string& n) {
  bool plain = !n.empty() && n != "empty" && std::all_of(n.begin(), n.end(), ident_char);
  if (plain) return n;
  std::string out = "\"";
  for (char c : n) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string keyword(Kind k) {
  for (const auto& kw : kKeywords)
    if (kw.kind == k) return std::string(kw.text);
  return "?";
}

class Evaluator {
 public:
  Evaluator(const Registry& reg, std::vector<WebService>* derived) : reg_(reg), derived_(derived) {}

  WebService eval(const CompositionExpr& e) {
    switch (e.kind) {
      case Kind::Empty: return empty_service();
      case Kind::Ref: return reg_.lookup(e.name);
      case Kind::Seq: return sequence(operand(e.args[0]), operand(e.args[1]));
      case Kind::Alt: return alternative(operand(e.args[0]), operand(e.args[1]));
      case Kind::Iter: return iteration(operand(e.args[0]));
      case Kind::AnySeq: return arbitrary_sequence(operand(e.args[0]), operand(e.args[1]));
      case Kind::Par: return parallel(operand(e.args[0]), operand(e.args[1]));
      case Kind::Disc: {
        std::vector<WebService> racers;
        for (std::size_t i = 0; i + 1 < e.args.size(); ++i) racers.push_back(operand(e.args[i]));
        return discriminator(racers, operand(e.args.back()));
      }
      case Kind::Select: {
        std::vector<WebService> services;
        for (const auto& a : e.args) services.push_back(operand(a));
        return selection(services);
      }
      case Kind::Refine: {
        const BlockFragment& block = reg_.lookup_block(e.block);
        return refine(operand(e.args[0]), e.name, block);
      }
      case Kind::Replace:
        return replace(operand(e.args[0]), operand(e.args[1]), operand(e.args[2]));
    }
    throw Error(Errc::InvalidModel, "unknown expression kind");
  }

 private:
  WebService operand(const CompositionExpr& e) {
    WebService ws = eval(e);
    if (e.kind != Kind::Ref && derived_) {
      bool known = std::any_of(derived_->begin(), derived_->end(),
                               [&](const WebService& d) { return d.name == ws.name; });
      if (!known) derived_->push_back(ws);
    }
    return ws;
  }

  const Registry& reg_;
  std::vector<WebService>* derived_;
};

}  // namespace

CompositionExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string print(const CompositionExpr& e) {
  switch (e.kind) {
    case Kind::Empty: return "empty";
    case Kind::Ref: return print_name(e.name);
    case Kind::Refine:
      return "refine(" + print(e.args[0]) + ", " + print_name(e.name) + ", " + print_name(e.block) + ")";
    case Kind::Disc: {
      std::string out = "disc(";
      for (std::size_t i = 0; i + 1 < e.args.size(); ++i) {
        if (i) out += ", ";
        out += print(e.args[i]);
      }
      return out + "; " + print(e.args.back()) + ")";
    }
    default: {
      std::string out = keyword(e.kind) + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        out += print(e.args[i]);
      }
      return out + ")";
    }
  }
}

WebService eval_expr(const CompositionExpr& e, const Registry& reg) {
  return Evaluator(reg, nullptr).eval(e);
}

WebService eval_expr(const CompositionExpr& e, const Registry& reg, std::vector<WebService>& derived) {
  return Evaluator(reg, &derived).eval(e);
}

}  // namespace gnet

#include "aspectminer/facts.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "aspectminer/error.hpp"
#include "aspectminer/textio.hpp"

namespace aspectminer {

std::string_view TypeDecl::simple_name() const {
  std::string_view n = name;
  auto dot = n.find_last_of('.');
  return dot == std::string_view::npos ? n : n.substr(dot + 1);
}

std::string_view to_string(Binding b) { return b == Binding::Virtual ? "virtual" : "static"; }

std::string_view to_string(TypeKind k) { return k == TypeKind::Class ? "class" : "interface"; }

bool is_accessor(const MethodDecl& m) {
  if (m.flags.has(MethodFlag::Accessor)) return true;
  if (m.paramSig.size() > 1) return false;
  for (std::string_view prefix : {"get", "set", "is"}) {
    std::string_view n = m.name;
    if (n.size() > prefix.size() && n.substr(0, prefix.size()) == prefix) {
      unsigned char next = static_cast<unsigned char>(n[prefix.size()]);
      if (std::isupper(next) || std::isdigit(next) || next == '_') return true;
    }
  }
  return false;
}

bool is_test_type(const TypeDecl& t) {
  if (t.isTest) return true;
  std::string_view n = t.simple_name();
  constexpr std::string_view kTest = "Test";
  if (n.size() >= kTest.size() && n.substr(n.size() - kTest.size()) == kTest) return true;
  if (n.size() > kTest.size() && n.substr(0, kTest.size()) == kTest &&
      std::isupper(static_cast<unsigned char>(n[kTest.size()])))
    return true;
  return false;
}

namespace {

std::optional<std::size_t> line_at(const std::vector<std::size_t>* lines, std::size_t i) {
  if (!lines || i >= lines->size()) return std::nullopt;
  return (*lines)[i];
}

std::string signature_key(const MethodDecl& m) {
  std::string key = m.name;
  key += '(';
  key += textio::join(m.paramSig, ",");
  key += ')';
  return key;
}

// Transitive closure over the override graph, starting from `start`.
void collect_reachable(const std::vector<std::vector<std::size_t>>& adj, std::size_t start,
                       std::vector<std::size_t>& out) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<std::size_t> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    auto cur = stack.back();
    stack.pop_back();
    for (auto next : adj[cur]) {
      if (seen[next]) continue;
      seen[next] = 1;
      out.push_back(next);
      stack.push_back(next);
    }
  }
  std::sort(out.begin(), out.end());
}

}  // namespace

ProgramFacts ProgramFacts::build(std::vector<TypeDecl> types, std::vector<MethodDecl> methods,
                                 std::vector<CallEdge> calls,
                                 std::set<OverridePair> explicitOverrides,
                                 const RecordLines* lines) {
  ProgramFacts f;
  f.types_ = std::move(types);
  f.methods_ = std::move(methods);
  f.calls_ = std::move(calls);

  const auto* typeLines = lines ? &lines->types : nullptr;
  const auto* methodLines = lines ? &lines->methods : nullptr;
  const auto* callLines = lines ? &lines->calls : nullptr;

  for (std::size_t i = 0; i < f.types_.size(); ++i) {
    const auto& t = f.types_[i];
    if (!f.typeIndex_.emplace(t.id, i).second)
      throw Error(Errc::DuplicateId, t.id, line_at(typeLines, i));
  }
  for (std::size_t i = 0; i < f.methods_.size(); ++i) {
    const auto& m = f.methods_[i];
    if (f.typeIndex_.count(m.id) || !f.methodIndex_.emplace(m.id, i).second)
      throw Error(Errc::DuplicateId, m.id, line_at(methodLines, i));
  }

  // Type references and the inheritance graph.
  const std::size_t nt = f.types_.size();
  std::vector<std::vector<std::size_t>> parents(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    const auto& t = f.types_[i];
    auto resolve = [&](const std::string& ref) {
      auto it = f.typeIndex_.find(ref);
      if (it == f.typeIndex_.end()) throw Error(Errc::DanglingReference, ref, line_at(typeLines, i));
      return it->second;
    };
    if (t.superId) parents[i].push_back(resolve(*t.superId));
    for (const auto& iface : t.interfaceIds) parents[i].push_back(resolve(iface));
  }

  // Cycle check (iterative three-colour DFS), then transitive supertypes.
  {
    enum : char { White, Grey, Black };
    std::vector<char> colour(nt, White);
    for (std::size_t root = 0; root < nt; ++root) {
      if (colour[root] != White) continue;
      std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
      colour[root] = Grey;
      while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next < parents[node].size()) {
          auto p = parents[node][next++];
          if (colour[p] == Grey) {
            std::vector<std::string> cycle;
            bool in = false;
            for (auto& [n, _] : stack) {
              if (n == p) in = true;
              if (in) cycle.push_back(f.types_[n].id);
            }
            throw Error(Errc::CyclicInheritance, textio::join(cycle, ","), line_at(typeLines, p));
          }
          if (colour[p] == White) {
            colour[p] = Grey;
            stack.emplace_back(p, 0);
          }
        } else {
          colour[node] = Black;
          stack.pop_back();
        }
      }
    }
  }
  f.supertypes_.resize(nt);
  for (std::size_t i = 0; i < nt; ++i) collect_reachable(parents, i, f.supertypes_[i]);

  // Methods: owner must exist, signature unique within the owner.
  f.methodType_.resize(f.methods_.size());
  std::set<std::pair<std::string, std::string>> sigs;
  for (std::size_t i = 0; i < f.methods_.size(); ++i) {
    const auto& m = f.methods_[i];
    auto it = f.typeIndex_.find(m.typeId);
    if (it == f.typeIndex_.end())
      throw Error(Errc::DanglingReference, m.typeId, line_at(methodLines, i));
    f.methodType_[i] = it->second;
    if (!sigs.emplace(m.typeId, signature_key(m)).second)
      throw Error(Errc::DuplicateId, m.typeId + "." + signature_key(m), line_at(methodLines, i));
  }

  for (std::size_t i = 0; i < f.calls_.size(); ++i) {
    const auto& c = f.calls_[i];
    for (const auto* ref : {&c.callerId, &c.calleeId})
      if (!f.methodIndex_.count(*ref))
        throw Error(Errc::DanglingReference, *ref, line_at(callLines, i));
  }

  // Explicit override pairs must respect the override relation.
  for (const auto& pair : explicitOverrides) {
    std::optional<std::size_t> line;
    if (lines)
      for (const auto& [p, l] : lines->overrides)
        if (p == pair) line = l;
    auto sub = f.methodIndex_.find(pair.first);
    auto sup = f.methodIndex_.find(pair.second);
    if (sub == f.methodIndex_.end()) throw Error(Errc::DanglingReference, pair.first, line);
    if (sup == f.methodIndex_.end()) throw Error(Errc::DanglingReference, pair.second, line);
    const auto& a = f.methods_[sub->second];
    const auto& b = f.methods_[sup->second];
    if (signature_key(a) != signature_key(b) ||
        !f.is_proper_subtype(f.methodType_[sub->second], f.methodType_[sup->second]))
      throw Error(Errc::MalformedRecord,
                  "override " + pair.first + " -> " + pair.second +
                      " does not link equal signatures in a subtype",
                  line);
  }

  f.overrides_ = derive_overrides(f);
  f.overrides_.insert(explicitOverrides.begin(), explicitOverrides.end());

  const std::size_t nm = f.methods_.size();
  std::vector<std::vector<std::size_t>> up(nm), down(nm);
  for (const auto& [sub, sup] : f.overrides_) {
    auto a = f.methodIndex_.at(sub);
    auto b = f.methodIndex_.at(sup);
    up[a].push_back(b);
    down[b].push_back(a);
  }
  f.overrideUp_.resize(nm);
  f.overrideDown_.resize(nm);
  for (std::size_t i = 0; i < nm; ++i) {
    collect_reachable(up, i, f.overrideUp_[i]);
    collect_reachable(down, i, f.overrideDown_[i]);
  }
  return f;
}

const TypeDecl* ProgramFacts::find_type(std::string_view id) const {
  auto idx = type_index(id);
  return idx ? &types_[*idx] : nullptr;
}

const MethodDecl* ProgramFacts::find_method(std::string_view id) const {
  auto idx = method_index(id);
  return idx ? &methods_[*idx] : nullptr;
}

std::optional<std::size_t> ProgramFacts::type_index(std::string_view id) const {
  auto it = typeIndex_.find(std::string(id));
  if (it == typeIndex_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> ProgramFacts::method_index(std::string_view id) const {
  auto it = methodIndex_.find(std::string(id));
  if (it == methodIndex_.end()) return std::nullopt;
  return it->second;
}

const TypeDecl& ProgramFacts::enclosing_type(const MethodDecl& m) const {
  return types_[typeIndex_.at(m.typeId)];
}

bool ProgramFacts::is_proper_subtype(std::size_t sub, std::size_t super) const {
  const auto& s = supertypes_[sub];
  return std::binary_search(s.begin(), s.end(), super);
}

std::set<OverridePair> derive_overrides(const ProgramFacts& facts) {
  std::map<std::string, std::vector<std::size_t>> bySignature;
  const auto& methods = facts.methods();
  for (std::size_t i = 0; i < methods.size(); ++i)
    bySignature[signature_key(methods[i])].push_back(i);

  std::set<OverridePair> out;
  for (const auto& [key, group] : bySignature) {
    for (auto a : group) {
      auto ta = *facts.type_index(methods[a].typeId);
      for (auto b : group) {
        if (a == b) continue;
        auto tb = *facts.type_index(methods[b].typeId);
        if (facts.is_proper_subtype(ta, tb)) out.emplace(methods[a].id, methods[b].id);
      }
    }
  }
  return out;
}

std::string hierarchy_root(const ProgramFacts& facts, std::string_view typeId) {
  const TypeDecl* t = facts.find_type(typeId);
  if (!t) throw Error(Errc::UnknownType, std::string(typeId));
  if (t->kind == TypeKind::Interface) return t->id;
  // The type graph is acyclic, so the walk terminates.
  while (t->superId) {
    const TypeDecl* parent = facts.find_type(*t->superId);
    if (parent->kind == TypeKind::Interface) break;
    t = parent;
  }
  return t->id;
}

namespace {

[[noreturn]] void malformed(std::size_t line, const std::string& why) {
  throw Error(Errc::MalformedRecord, why, line);
}

std::string ident(std::string_view field, std::size_t line, const char* what) {
  if (!textio::valid_identifier(field)) malformed(line, std::string("bad ") + what);
  return std::string(field);
}

MethodFlags parse_flags(std::string_view field, std::size_t line) {
  MethodFlags flags;
  for (const auto& f : textio::split_list(field)) {
    if (f == "accessor") flags.set(MethodFlag::Accessor);
    else if (f == "constructor") flags.set(MethodFlag::Constructor);
    else if (f == "static") flags.set(MethodFlag::Static);
    else if (f == "private") flags.set(MethodFlag::Private);
    else if (f == "utility") flags.set(MethodFlag::Utility);
    else malformed(line, "unknown method flag '" + f + "'");
  }
  return flags;
}

}  // namespace

ProgramFacts parse_facts(std::string_view text) {
  std::vector<TypeDecl> types;
  std::vector<MethodDecl> methods;
  std::vector<CallEdge> calls;
  std::set<OverridePair> overrides;
  RecordLines lines;

  textio::for_each_record(text, [&](std::size_t line, const std::vector<std::string_view>& f) {
    const std::string_view kind = f[0];
    auto expect = [&](std::size_t n) {
      if (f.size() != n)
        malformed(line, std::string(kind) + " record needs " + std::to_string(n) + " fields, got " +
                            std::to_string(f.size()));
    };
    if (kind == "T") {
      expect(7);
      TypeDecl t;
      t.id = ident(f[1], line, "type id");
      t.name = ident(f[2], line, "type name");
      if (f[3] == "class") t.kind = TypeKind::Class;
      else if (f[3] == "interface") t.kind = TypeKind::Interface;
      else malformed(line, "type kind must be class or interface");
      if (f[4] != "-") t.superId = ident(f[4], line, "super id");
      for (auto& i : textio::split_list(f[5])) t.interfaceIds.push_back(ident(i, line, "interface id"));
      if (f[6] == "test") t.isTest = true;
      else if (f[6] != "-") malformed(line, "test column must be 'test' or '-'");
      types.push_back(std::move(t));
      lines.types.push_back(line);
    } else if (kind == "M") {
      expect(6);
      MethodDecl m;
      m.id = ident(f[1], line, "method id");
      m.typeId = ident(f[2], line, "type id");
      m.name = ident(f[3], line, "method name");
      for (auto& p : textio::split_list(f[4])) m.paramSig.push_back(ident(p, line, "parameter type"));
      m.flags = parse_flags(f[5], line);
      methods.push_back(std::move(m));
      lines.methods.push_back(line);
    } else if (kind == "C") {
      expect(4);
      CallEdge c;
      c.callerId = ident(f[1], line, "caller id");
      c.calleeId = ident(f[2], line, "callee id");
      if (f[3] == "virtual") c.binding = Binding::Virtual;
      else if (f[3] == "static") c.binding = Binding::Static;
      else malformed(line, "binding must be virtual or static");
      calls.push_back(std::move(c));
      lines.calls.push_back(line);
    } else if (kind == "O") {
      expect(3);
      OverridePair p{ident(f[1], line, "overrider id"), ident(f[2], line, "overridden id")};
      lines.overrides.emplace_back(p, line);
      overrides.insert(std::move(p));
    } else {
      malformed(line, "unknown record kind '" + std::string(kind) + "'");
    }
  });

  return ProgramFacts::build(std::move(types), std::move(methods), std::move(calls),
                             std::move(overrides), &lines);
}

ProgramFacts read_facts_file(const std::string& path) { return parse_facts(textio::read_file(path)); }

std::string serialize_facts(const ProgramFacts& facts) {
  std::ostringstream out;
  for (const auto& t : facts.types()) {
    out << "T\t" << t.id << '\t' << t.name << '\t' << to_string(t.kind) << '\t'
        << (t.superId ? *t.superId : "-") << '\t'
        << (t.interfaceIds.empty() ? "-" : textio::join(t.interfaceIds, ",")) << '\t'
        << (t.isTest ? "test" : "-") << '\n';
  }
  for (const auto& m : facts.methods()) {
    std::vector<std::string> flags;
    if (m.flags.has(MethodFlag::Accessor)) flags.emplace_back("accessor");
    if (m.flags.has(MethodFlag::Constructor)) flags.emplace_back("constructor");
    if (m.flags.has(MethodFlag::Static)) flags.emplace_back("static");
    if (m.flags.has(MethodFlag::Private)) flags.emplace_back("private");
    if (m.flags.has(MethodFlag::Utility)) flags.emplace_back("utility");
    out << "M\t" << m.id << '\t' << m.typeId << '\t' << m.name << '\t'
        << (m.paramSig.empty() ? "-" : textio::join(m.paramSig, ",")) << '\t'
        << (flags.empty() ? "-" : textio::join(flags, ",")) << '\n';
  }
  for (const auto& c : facts.calls())
    out << "C\t" << c.callerId << '\t' << c.calleeId << '\t' << to_string(c.binding) << '\n';
  for (const auto& [sub, sup] : facts.overrides()) out << "O\t" << sub << '\t' << sup << '\n';
  return out.str();
}

}  // namespace aspectminer

#include "itl/type.hpp"

#include "itl/error.hpp"

namespace itl {

namespace {

size_t mix(size_t h, size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

const std::shared_ptr<const Type::Node>& Type::prop_node() {
  static const std::shared_ptr<const Node> n =
      std::make_shared<Node>(Node{false, "", {}, 0x517cc1b727220a95ULL});
  return n;
}

Type Type::basic(const std::string& name) {
  if (name.empty()) throw TypeError("basic type with empty name");
  Node n{true, name, {}, 0};
  n.hash = mix(std::hash<std::string>{}(name), 0x1);
  return Type(std::make_shared<Node>(std::move(n)));
}

Type Type::complex(std::vector<Type> args) {
  if (args.empty()) return prop();
  Node n{false, "", std::move(args), 0};
  size_t h = 0x2;
  for (const auto& a : n.args) h = mix(h, a.hash());
  n.hash = h;
  return Type(std::make_shared<Node>(std::move(n)));
}

Type Type::applied() const {
  if (is_basic() || args().empty())
    throw TypeError("cannot apply a term of type " + print_type(*this));
  std::vector<Type> rest(args().begin() + 1, args().end());
  return complex(std::move(rest));
}

int Type::cmp(const Type& o) const {
  if (node_ == o.node_) return 0;
  if (node_->basic != o.node_->basic) return node_->basic ? -1 : 1;
  if (node_->basic) return name().compare(o.name());
  if (args().size() != o.args().size()) return args().size() < o.args().size() ? -1 : 1;
  for (size_t i = 0; i < args().size(); ++i) {
    int c = args()[i].cmp(o.args()[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::string print_type(const Type& t) {
  if (t.is_basic()) return t.name();
  std::string out = "<";
  for (size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += " ";
    out += print_type(t.args()[i]);
  }
  out += ">";
  return out;
}

void Signature::declare(const std::string& name, const Type& type) {
  auto it = constants.find(name);
  if (it != constants.end() && it->second != type)
    throw TypeError("constant " + name + " redeclared at a different type");
  constants.emplace(name, type);
}

Signature Signature::merged(const Signature& other) const {
  Signature out = *this;
  for (const auto& b : other.basic_types) out.basic_types.insert(b);
  for (const auto& [name, type] : other.constants) out.declare(name, type);
  return out;
}

}  // namespace itl

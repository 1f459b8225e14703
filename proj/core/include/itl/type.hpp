#ifndef ITL_TYPE_HPP
#define ITL_TYPE_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace itl {

// A type is a basic name or <a1 ... an> with n >= 0; <> is the proposition type.
// Immutable, shared, compared structurally.
class Type {
 public:
  Type() : node_(prop_node()) {}  // defaults to <>

  static Type basic(const std::string& name);
  static Type complex(std::vector<Type> args);
  static Type prop() { return Type(); }

  bool is_basic() const { return node_->basic; }
  bool is_complex() const { return !node_->basic; }
  bool is_prop() const { return !node_->basic && node_->args.empty(); }
  const std::string& name() const { return node_->name; }
  const std::vector<Type>& args() const { return node_->args; }
  size_t arity() const { return node_->args.size(); }

  // Type of the result after applying one argument: <a1 a2..an> -> <a2..an>.
  Type applied() const;

  bool operator==(const Type& o) const { return cmp(o) == 0; }
  bool operator!=(const Type& o) const { return cmp(o) != 0; }
  bool operator<(const Type& o) const { return cmp(o) < 0; }
  int cmp(const Type& o) const;

  size_t hash() const { return node_->hash; }

 private:
  struct Node {
    bool basic;
    std::string name;        // basic only
    std::vector<Type> args;  // complex only
    size_t hash;
  };
  std::shared_ptr<const Node> node_;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static const std::shared_ptr<const Node>& prop_node();
};

std::string print_type(const Type& t);

// (name, type) pairs; the same name at two types is two distinct variables.
struct Var {
  std::string name;
  Type type;

  bool operator==(const Var& o) const { return name == o.name && type == o.type; }
  bool operator!=(const Var& o) const { return !(*this == o); }
  bool operator<(const Var& o) const {
    if (name != o.name) return name < o.name;
    return type < o.type;
  }
};

// Uniquely typed non-logical constants plus the declared basic types.
struct Signature {
  std::map<std::string, Type> constants;
  std::set<std::string> basic_types;

  bool has_constant(const std::string& name) const { return constants.count(name) != 0; }
  // Throws TypeError if `name` is already declared at a different type.
  void declare(const std::string& name, const Type& type);
  void declare_basic(const std::string& name) { basic_types.insert(name); }
  // Union of declarations; conflicting constant types throw.
  Signature merged(const Signature& other) const;
};

// Identifiers starting with '$' are reserved for generated names (fresh
// constants, desugaring binders); they never appear in user signatures.
inline bool is_reserved_name(const std::string& s) { return !s.empty() && s[0] == '$'; }

}  // namespace itl

#endif

#pragma once

#include <map>
#include <string>
#include <vector>

#include "totcheck/ast.hpp"

namespace totcheck {

struct ItemInfo {
  std::string type_name;  // declaration owning the constructor or destructor
  Polarity polarity = Polarity::Data;
  TypeExpr sig;
};

struct TypeEnv {
  std::map<std::string, TypeDecl> decls;
  std::map<std::string, ItemInfo> items;  // label -> owner
  std::map<std::string, TypeExpr> sigs;   // function -> generalized type; variables are quantified

  const TypeDecl* decl(const std::string& name) const;
  const ItemInfo* item(const std::string& label) const;
};

// The declared parameters of `d` replaced by `args`.
TypeExpr instantiate_decl(const TypeDecl& d, const std::vector<TypeExpr>& args, const TypeExpr& t);

// Argument type of constructor `label` at codomain `self`, or result type of
// destructor `label` at record type `self`.
TypeExpr item_type_at(const TypeEnv& env, const std::string& label, const TypeExpr& self);

TypeEnv validate_type_decls(const Program& p);

// Infers one definition group in place: stamps every pattern and term node
// with its type and records the generalized signatures in `env`.
void infer_group(DefGroup& g, TypeEnv& env);

struct TypedProgram {
  Program program;
  TypeEnv env;
};

TypedProgram infer_types(const Program& p, const TypeEnv& env);

void check_group_exhaustive(const DefGroup& g, const TypeEnv& env);
void check_exhaustiveness(const TypedProgram& tp);

void check_group_full_application(const DefGroup& g);
void check_full_application(const TypedProgram& tp);

}  // namespace totcheck

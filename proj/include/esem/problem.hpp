// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "esem/formula.hpp"
#include "esem/sexpr.hpp"

namespace esem {

enum class SymbolKind { Fun, Skolem, Const };

struct FunctionSymbol {
  std::string name;
  std::vector<std::string> arg_sorts;
  std::string result;
  SymbolKind kind = SymbolKind::Fun;

  bool operator==(const FunctionSymbol&) const = default;
};

// Describes the generative signature used by the progress measure.
struct MeasureConfig {
  struct Lifted {
    std::string name;
    std::vector<std::string> arg_sorts;
    bool operator==(const Lifted&) const = default;
  };
  struct Nested {
    std::string tag;
    std::vector<std::string> param_sorts;
    bool operator==(const Nested&) const = default;
  };
  std::string set_sort;
  std::string elem_sort;
  std::vector<Lifted> skolems;
  std::vector<Nested> nested;

  bool operator==(const MeasureConfig&) const = default;
};

struct Problem {
  std::vector<std::string> sorts;  // declaration order, Bool first
  std::map<std::string, FunctionSymbol> functions;
  std::vector<std::string> function_order;
  std::vector<QuantPtr> axioms;
  std::vector<Literal> literals;
  std::optional<MeasureConfig> measure;
  std::vector<std::string> warnings;

  bool has_sort(const std::string& s) const;
  const FunctionSymbol* function(const std::string& name) const;
  // Number of declared functions, not counting true and false.
  std::size_t user_function_count() const { return function_order.size(); }
};

Problem parse_problem(const std::string& text);

// Parses one literal against `p`. With `auto_declare`, unknown atoms become
// constants whose sort is inferred from their position.
Literal parse_literal(Problem& p, const std::string& text, bool auto_declare);

std::string print_problem(const Problem& p);

std::uint64_t fnv1a(const std::string& s);
std::string hex64(std::uint64_t v);
std::string problem_digest(const Problem& p);

}  // namespace esem

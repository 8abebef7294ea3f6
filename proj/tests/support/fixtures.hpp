// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "esem/problem.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(ESEM_DATA_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline esem::Problem load(const std::string& name) { return esem::parse_problem(slurp(data_path(name))); }

inline esem::Term T(const std::string& n) { return esem::mk_app(n, "T"); }
inline esem::Term S(const std::string& n) { return esem::mk_app(n, "SetT"); }
inline esem::Term member(esem::Term x, esem::Term s) { return esem::mk_app("member", esem::kBool, {x, s}); }
inline esem::Term diff(esem::Term a, esem::Term b) { return esem::mk_app("diff", "SetT", {a, b}); }
inline esem::Term uni(esem::Term a, esem::Term b) { return esem::mk_app("union", "SetT", {a, b}); }

}  // namespace fixtures

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <set>
#include <vector>

#include "esem/einterface.hpp"

namespace esem {

struct HistEntry {
  Tag tag;
  std::vector<Term> terms;
};

struct HistLess {
  bool operator()(const HistEntry& a, const HistEntry& b) const {
    if (int c = compare(a.tag, b.tag)) return c < 0;
    return compare(a.terms, b.terms) < 0;
  }
};

using EHistory = std::set<HistEntry, HistLess>;

enum class MatchMode { Plain, Optimised };

std::string to_string(const HistEntry& e);

EHistory record(const EHistory& h, const Tag& tag, const std::vector<Term>& terms);

// True unless some entry (with an identical tag in plain mode, or an
// equivalent tag in optimised mode) is pointwise known-equal to `terms`.
bool history_enables(const EInterface& e, const EHistory& h, const Tag& tag,
                     const std::vector<Term>& terms, MatchMode mode);

struct EMatch {
  QuantPtr quantifier;
  std::vector<Term> terms;  // class representatives
  int trigger_index = 0;
};

std::string to_string(const EMatch& m);

// Substitutions (var -> class root) under which every term of one trigger set
// is known. Results are deduplicated.
std::vector<std::vector<int>> trigger_matches(const EInterface& e, const Quantifier& q,
                                              std::size_t trigger_index);

// All enabled matches of the quantifiers in `quants`, one per class tuple.
std::vector<EMatch> enabled_matches(const EInterface& e, const EHistory& h,
                                    const std::vector<QuantPtr>& quants, MatchMode mode);

}  // namespace esem

// Copyright 2026 The sdrgrid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sdrgrid/relation_engine.h"

#include <algorithm>
#include <cstdlib>
#include <optional>

namespace sdrgrid {
namespace {

const MessageInstance& side_of(Side side, const MessageInstance& a, const MessageInstance& b) {
  return side == Side::kFirst ? a : b;
}

// Resolved operand: either a bound value or a bare literal.
struct Resolved {
  const BoundValue* bound = nullptr;
  std::string literal;
};

std::optional<Resolved> resolve(const Operand& op, const MessageInstance& a,
                                const MessageInstance& b) {
  if (const auto* ref = std::get_if<ArgRef>(&op)) {
    const MessageInstance& m = side_of(ref->side, a, b);
    auto it = m.bindings.find(ref->arg);
    if (it == m.bindings.end()) return std::nullopt;
    return Resolved{&it->second, {}};
  }
  return Resolved{nullptr, std::get<Literal>(op).value};
}

const std::string& text_of(const Resolved& r) {
  return r.bound ? bound_text(*r.bound) : r.literal;
}

bool values_equal(const Resolved& l, const Resolved& r) {
  if (l.bound && r.bound) {
    return l.bound->index() == r.bound->index() && bound_text(*l.bound) == bound_text(*r.bound);
  }
  return text_of(l) == text_of(r);
}

// Concept to rank against: the scaled literal's concept, or failing that the
// other side's.
std::optional<std::size_t> rank_of(const Resolved& v, const Resolved& other,
                                   const Ontology& onto) {
  auto concept_for = [](const Resolved& x) -> const std::string* {
    if (!x.bound) return nullptr;
    if (const auto* s = std::get_if<ScaledLiteral>(x.bound)) return &s->concept_name;
    return nullptr;
  };
  const std::string* c = concept_for(v);
  if (!c) c = concept_for(other);
  if (!c) return std::nullopt;
  return onto.scale_rank(*c, text_of(v));
}

std::optional<std::string> concept_of_value(const Resolved& v, const Ontology& onto) {
  if (!v.bound) return onto.concept_of(v.literal);
  if (const auto* e = std::get_if<EntityRef>(v.bound)) return onto.concept_of(e->id);
  if (const auto* s = std::get_if<ScaledLiteral>(v.bound)) return s->concept_name;
  return std::string(kMessageTypeLiteral);
}

bool atom_holds(const Atom& atom, const MessageInstance& a, const MessageInstance& b,
                const Ontology& onto) {
  auto l = resolve(atom.lhs, a, b);
  auto r = resolve(atom.rhs, a, b);
  if (!l || !r) return false;
  switch (atom.op) {
    case CompareOp::kEq:
      return values_equal(*l, *r);
    case CompareOp::kNeq:
      return !values_equal(*l, *r);
    case CompareOp::kLt:
    case CompareOp::kGt: {
      auto lr = rank_of(*l, *r, onto);
      auto rr = rank_of(*r, *l, onto);
      if (!lr || !rr) return false;
      return atom.op == CompareOp::kLt ? *lr < *rr : *lr > *rr;
    }
    case CompareOp::kSubsumes: {
      auto c = concept_of_value(*l, onto);
      return c && onto.is_a(*c, text_of(*r));
    }
  }
  return false;
}

bool types_match(const RelationSchema& schema, const MessageInstance& a,
                 const MessageInstance& b) {
  return schema.pairs.count({a.msg_type, b.msg_type}) > 0;
}

void append_for_pairs(const std::vector<MessagePair>& pairs, const TopicSpec& spec,
                      RelationType type, std::vector<RelationInstance>& out) {
  for (const RelationSchema& schema : spec.relations) {
    if (schema.type != type) continue;
    for (const auto& [a, b] : pairs) {
      if (relation_holds(*a, *b, schema, spec)) {
        out.push_back({schema.name, schema.type, a->id, b->id});
      }
    }
  }
}

void canonicalize(std::vector<RelationInstance>& out) {
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

}  // namespace

bool synchronic_gate(const MessageInstance& a, const MessageInstance& b,
                     std::int64_t window) {
  return a.source != b.source && std::abs(a.ref_time - b.ref_time) <= window;
}

bool diachronic_gate(const MessageInstance& a, const MessageInstance& b,
                     const DiachronicPolicy& policy, std::int64_t time_unit) {
  if (a.source != b.source || !(a.ref_time < b.ref_time) || a.pub_time == b.pub_time) {
    return false;
  }
  if (policy.kind == DiachronicPolicy::Kind::kExactDistance) {
    return b.ref_time - a.ref_time == policy.distance * time_unit;
  }
  return true;
}

std::vector<MessagePair> synchronic_candidates(std::span<const MessageInstance> msgs,
                                               std::int64_t window) {
  std::vector<MessagePair> out;
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    for (std::size_t j = i + 1; j < msgs.size(); ++j) {
      const MessageInstance* a = &msgs[i];
      const MessageInstance* b = &msgs[j];
      if (!synchronic_gate(*a, *b, window)) continue;
      if (b->source < a->source) std::swap(a, b);
      out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<MessagePair> diachronic_candidates(std::span<const MessageInstance> msgs,
                                               const DiachronicPolicy& policy,
                                               std::int64_t time_unit) {
  std::vector<MessagePair> out;
  for (std::size_t i = 0; i < msgs.size(); ++i) {
    for (std::size_t j = 0; j < msgs.size(); ++j) {
      if (i != j && diachronic_gate(msgs[i], msgs[j], policy, time_unit)) {
        out.emplace_back(&msgs[i], &msgs[j]);
      }
    }
  }
  return out;
}

bool evaluate_constraints(const MessageInstance& first, const MessageInstance& second,
                          const RelationSchema& schema, const TopicSpec& spec) {
  return std::all_of(schema.constraint.atoms.begin(), schema.constraint.atoms.end(),
                     [&](const Atom& atom) {
                       return atom_holds(atom, first, second, spec.ontology);
                     });
}

bool relation_holds(const MessageInstance& first, const MessageInstance& second,
                    const RelationSchema& schema, const TopicSpec& spec) {
  if (types_match(schema, first, second) &&
      evaluate_constraints(first, second, schema, spec)) {
    return true;
  }
  if (schema.type == RelationType::kSynchronic && first.msg_type != second.msg_type &&
      types_match(schema, second, first) &&
      evaluate_constraints(second, first, schema, spec)) {
    return true;
  }
  return false;
}

std::vector<RelationInstance> extract_relations(std::span<const MessageInstance> msgs,
                                                const TopicSpec& spec) {
  std::vector<RelationInstance> out;
  append_for_pairs(synchronic_candidates(msgs, spec.config.sync_window_minutes), spec,
                   RelationType::kSynchronic, out);
  append_for_pairs(diachronic_candidates(msgs, spec.config.diachronic_policy,
                                         spec.config.time_unit_minutes),
                   spec, RelationType::kDiachronic, out);
  canonicalize(out);
  return out;
}

std::vector<RelationInstance> extract_new_relations(
    std::span<const MessageInstance> old_msgs, std::span<const MessageInstance> added,
    const TopicSpec& spec) {
  const std::int64_t window = spec.config.sync_window_minutes;
  const auto& policy = spec.config.diachronic_policy;
  const std::int64_t unit = spec.config.time_unit_minutes;
  std::vector<MessagePair> sync;
  std::vector<MessagePair> diach;
  auto consider = [&](const MessageInstance& a, const MessageInstance& b) {
    if (synchronic_gate(a, b, window)) {
      sync.emplace_back(b.source < a.source ? MessagePair{&b, &a} : MessagePair{&a, &b});
    }
    if (diachronic_gate(a, b, policy, unit)) diach.emplace_back(&a, &b);
    if (diachronic_gate(b, a, policy, unit)) diach.emplace_back(&b, &a);
  };
  for (std::size_t i = 0; i < added.size(); ++i) {
    for (const MessageInstance& old : old_msgs) consider(added[i], old);
    for (std::size_t j = i + 1; j < added.size(); ++j) consider(added[i], added[j]);
  }
  std::vector<RelationInstance> out;
  append_for_pairs(sync, spec, RelationType::kSynchronic, out);
  append_for_pairs(diach, spec, RelationType::kDiachronic, out);
  canonicalize(out);
  return out;
}

}  // namespace sdrgrid

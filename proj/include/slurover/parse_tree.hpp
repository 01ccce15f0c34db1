// slurover/parse_tree.hpp

// Copyright 2026  The slurover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Linearized task-oriented semantic parses, e.g.
//
//   [IN:CREATE_ALARM [SL:DATE_TIME for nine am ] ]
//
// Intent and slot openers and the closing bracket are single
// whitespace-delimited tokens. Fields of any other shape are words, so
// plain ASR transcripts go through the same tokenizer.

#ifndef SLUROVER_PARSE_TREE_HPP_
#define SLUROVER_PARSE_TREE_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "slurover/common.hpp"
#include "slurover/random.hpp"

namespace slurover {

/// Set of bytes allowed in intent/slot labels. Default is [A-Z0-9_].
class LabelCharset {
 public:
  LabelCharset() : LabelCharset(FromChars("ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")) {}

  static LabelCharset FromChars(std::string_view chars) {
    LabelCharset cs(0);
    for (unsigned char c : chars) cs.allowed_[c] = true;
    return cs;
  }
  /// Default charset plus lowercase letters, and "[in:"/"[sl:" openers
  /// are recognized. Used when scoring lowercased text.
  static LabelCharset CaseInsensitive() {
    LabelCharset cs =
        FromChars("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_");
    cs.lowercase_prefixes_ = true;
    return cs;
  }

  bool Accepts(std::string_view label) const {
    if (label.empty()) return false;
    for (unsigned char c : label)
      if (!allowed_[c]) return false;
    return true;
  }

  bool lowercase_prefixes() const { return lowercase_prefixes_; }

 private:
  explicit LabelCharset(int) { allowed_.fill(false); }
  std::array<bool, 256> allowed_;
  bool lowercase_prefixes_ = false;
};

enum class TagRole { kIntentOpen, kSlotOpen, kClose, kWord };

struct TagToken {
  std::string surface;
  TagRole role = TagRole::kWord;

  /// Label of an opener ("GET_WEATHER" for "[IN:GET_WEATHER"); empty otherwise.
  std::string_view label() const {
    if (role == TagRole::kIntentOpen || role == TagRole::kSlotOpen)
      return std::string_view(surface).substr(4);
    return {};
  }
  bool is_tag() const { return role != TagRole::kWord; }

  friend bool operator==(const TagToken &, const TagToken &) = default;
};

inline TagRole ClassifyField(std::string_view field,
                             const LabelCharset &charset = LabelCharset()) {
  if (field == "]") return TagRole::kClose;
  if (field.size() > 4 && field[0] == '[' && field[3] == ':') {
    std::string_view prefix = field.substr(1, 2);
    if (charset.Accepts(field.substr(4))) {
      const bool lower = charset.lowercase_prefixes();
      if (prefix == "IN" || (lower && prefix == "in")) return TagRole::kIntentOpen;
      if (prefix == "SL" || (lower && prefix == "sl")) return TagRole::kSlotOpen;
    }
  }
  return TagRole::kWord;
}

/// Splits on whitespace and classifies every field. Never fails.
inline std::vector<TagToken> TokenizeLinearized(
    std::string_view text, const LabelCharset &charset = LabelCharset()) {
  std::vector<TagToken> tokens;
  for (auto &field : SplitWhitespace(text)) {
    TagRole role = ClassifyField(field, charset);
    tokens.push_back({std::move(field), role});
  }
  return tokens;
}

enum class NodeKind { kIntent, kSlot, kToken };

struct ParseNode {
  NodeKind kind = NodeKind::kToken;
  std::string label;  // intent/slot name; empty for tokens
  std::string text;   // word; empty for intents/slots
  std::vector<ParseNode> children;

  static ParseNode Intent(std::string label, std::vector<ParseNode> children = {}) {
    return {NodeKind::kIntent, std::move(label), {}, std::move(children)};
  }
  static ParseNode Slot(std::string label, std::vector<ParseNode> children = {}) {
    return {NodeKind::kSlot, std::move(label), {}, std::move(children)};
  }
  static ParseNode Token(std::string text) {
    return {NodeKind::kToken, {}, std::move(text), {}};
  }

  friend bool operator==(const ParseNode &, const ParseNode &) = default;
};

struct ParseTree {
  ParseNode root;

  /// Intent/slot nesting depth; a root with only words has depth 1.
  int Depth() const { return NodeDepth(root); }

  friend bool operator==(const ParseTree &, const ParseTree &) = default;

 private:
  static int NodeDepth(const ParseNode &node) {
    if (node.kind == NodeKind::kToken) return 0;
    int deepest = 0;
    for (const auto &child : node.children) deepest = std::max(deepest, NodeDepth(child));
    return 1 + deepest;
  }
};

/// A word may not be empty, contain whitespace or '[', or be a lone "]".
inline bool IsValidWord(std::string_view text) {
  if (text.empty() || text == "]") return false;
  for (char c : text)
    if (c == '[' || IsSpace(c)) return false;
  return true;
}

namespace internal {

struct ParseFailure {
  ErrorCode code;
  std::size_t position;  // index of the offending token
};

inline std::variant<ParseTree, ParseFailure> TryParse(std::span<const TagToken> tokens) {
  if (tokens.empty()) return ParseFailure{ErrorCode::kEmptyInput, 0};

  // Nodes under construction; stack.front() is the root.
  std::vector<ParseNode> stack;
  bool root_done = false;
  ParseNode root;

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const TagToken &tok = tokens[i];
    if (stack.empty()) {
      if (tok.role == TagRole::kClose) return ParseFailure{ErrorCode::kUnbalancedBrackets, i};
      if (root_done) {
        if (tok.role == TagRole::kWord) return ParseFailure{ErrorCode::kRootNotIntent, i};
        return ParseFailure{ErrorCode::kMultipleRoots, i};
      }
      if (tok.role != TagRole::kIntentOpen) return ParseFailure{ErrorCode::kRootNotIntent, i};
      stack.push_back(ParseNode::Intent(std::string(tok.label())));
      continue;
    }
    const NodeKind parent = stack.back().kind;
    switch (tok.role) {
      case TagRole::kIntentOpen:
        if (parent != NodeKind::kSlot) return ParseFailure{ErrorCode::kInvalidNesting, i};
        stack.push_back(ParseNode::Intent(std::string(tok.label())));
        break;
      case TagRole::kSlotOpen:
        if (parent != NodeKind::kIntent) return ParseFailure{ErrorCode::kInvalidNesting, i};
        stack.push_back(ParseNode::Slot(std::string(tok.label())));
        break;
      case TagRole::kWord:
        if (!IsValidWord(tok.surface)) return ParseFailure{ErrorCode::kInvalidToken, i};
        stack.back().children.push_back(ParseNode::Token(tok.surface));
        break;
      case TagRole::kClose: {
        ParseNode done = std::move(stack.back());
        stack.pop_back();
        if (stack.empty()) {
          root = std::move(done);
          root_done = true;
        } else {
          stack.back().children.push_back(std::move(done));
        }
        break;
      }
    }
  }
  if (!stack.empty()) return ParseFailure{ErrorCode::kUnbalancedBrackets, tokens.size()};
  return ParseTree{std::move(root)};
}

inline void CheckNode(const ParseNode &node, const LabelCharset &charset,
                      std::optional<NodeKind> parent) {
  auto fail = [](const std::string &why) { throw Error(ErrorCode::kInvalidTree, why); };
  switch (node.kind) {
    case NodeKind::kToken:
      if (!node.children.empty()) fail("token '" + node.text + "' has children");
      if (!node.label.empty()) fail("token '" + node.text + "' has a label");
      if (!IsValidWord(node.text)) fail("bad token text '" + node.text + "'");
      return;
    case NodeKind::kIntent:
      if (parent && *parent != NodeKind::kSlot) fail("intent " + node.label + " not under a slot");
      break;
    case NodeKind::kSlot:
      if (parent != NodeKind::kIntent) fail("slot " + node.label + " not under an intent");
      break;
  }
  if (!charset.Accepts(node.label)) fail("bad label '" + node.label + "'");
  if (!node.text.empty()) fail("node " + node.label + " carries text");
  for (const auto &child : node.children) CheckNode(child, charset, node.kind);
}

inline void AppendLinearized(const ParseNode &node, std::string *out) {
  if (!out->empty()) *out += ' ';
  if (node.kind == NodeKind::kToken) {
    *out += node.text;
    return;
  }
  *out += node.kind == NodeKind::kIntent ? "[IN:" : "[SL:";
  *out += node.label;
  for (const auto &child : node.children) AppendLinearized(child, out);
  *out += " ]";
}

}  // namespace internal

/// Builds the tree whose pre-order linearization is `tokens`.
/// Throws Error with EmptyInput, UnbalancedBrackets, RootNotIntent,
/// MultipleRoots, InvalidNesting or InvalidToken.
inline ParseTree ParseLinearized(std::span<const TagToken> tokens) {
  auto result = internal::TryParse(tokens);
  if (auto *failure = std::get_if<internal::ParseFailure>(&result))
    throw Error(failure->code, "at token " + std::to_string(failure->position));
  return std::get<ParseTree>(std::move(result));
}

/// Throws InvalidTree if the tree breaks a node invariant.
inline void CheckTree(const ParseTree &tree, const LabelCharset &charset = LabelCharset()) {
  if (tree.root.kind != NodeKind::kIntent)
    throw Error(ErrorCode::kInvalidTree, "root is not an intent");
  internal::CheckNode(tree.root, charset, std::nullopt);
}

/// Canonical single-spaced linearization.
inline std::string Serialize(const ParseTree &tree,
                             const LabelCharset &charset = LabelCharset()) {
  CheckTree(tree, charset);
  std::string out;
  internal::AppendLinearized(tree.root, &out);
  return out;
}

struct Verdict {
  std::optional<ErrorCode> error;

  bool valid() const { return !error.has_value(); }
  std::string_view name() const { return error ? ErrorName(*error) : "Valid"; }

  friend bool operator==(const Verdict &, const Verdict &) = default;
};

inline Verdict Validate(std::string_view text, const LabelCharset &charset = LabelCharset()) {
  auto tokens = TokenizeLinearized(text, charset);
  auto result = internal::TryParse(tokens);
  if (auto *failure = std::get_if<internal::ParseFailure>(&result)) return {failure->code};
  return {};
}

struct RandomTreeParams {
  int max_depth = 3;
  std::vector<std::string> intent_labels;
  std::vector<std::string> slot_labels;
  std::vector<std::string> word_vocab;
  int max_intent_children = 4;
  int max_slot_children = 3;
};

namespace internal {

inline const std::string &Pick(Rng &rng, const std::vector<std::string> &items) {
  return items[rng.Index(items.size())];
}

inline ParseNode RandomIntent(Rng &rng, const RandomTreeParams &p, int level);

inline ParseNode RandomSlot(Rng &rng, const RandomTreeParams &p, int level) {
  ParseNode slot = ParseNode::Slot(Pick(rng, p.slot_labels));
  const auto n = rng.Between(1, p.max_slot_children);
  for (std::int64_t i = 0; i < n; ++i) {
    if (level < p.max_depth && rng.Chance(0.2))
      slot.children.push_back(RandomIntent(rng, p, level + 1));
    else
      slot.children.push_back(ParseNode::Token(Pick(rng, p.word_vocab)));
  }
  return slot;
}

inline ParseNode RandomIntent(Rng &rng, const RandomTreeParams &p, int level) {
  ParseNode intent = ParseNode::Intent(Pick(rng, p.intent_labels));
  const auto n = rng.Between(0, p.max_intent_children);
  for (std::int64_t i = 0; i < n; ++i) {
    if (level < p.max_depth && rng.Chance(0.5))
      intent.children.push_back(RandomSlot(rng, p, level + 1));
    else
      intent.children.push_back(ParseNode::Token(Pick(rng, p.word_vocab)));
  }
  return intent;
}

}  // namespace internal

/// Deterministic random tree with Depth() <= params.max_depth.
/// Labels and words must themselves be valid; they are checked once here.
inline ParseTree RandomTree(std::uint64_t seed, const RandomTreeParams &params,
                            const LabelCharset &charset = LabelCharset()) {
  if (params.max_depth < 1 || params.intent_labels.empty() || params.slot_labels.empty() ||
      params.word_vocab.empty() || params.max_intent_children < 0 ||
      params.max_slot_children < 1)
    throw Error(ErrorCode::kInvalidParams, "random tree needs max_depth >= 1 and non-empty lists");
  for (const auto *labels : {&params.intent_labels, &params.slot_labels})
    for (const auto &label : *labels)
      if (!charset.Accepts(label))
        throw Error(ErrorCode::kInvalidParams, "bad label '" + label + "'");
  for (const auto &word : params.word_vocab)
    if (!IsValidWord(word)) throw Error(ErrorCode::kInvalidParams, "bad word '" + word + "'");

  Rng rng(seed);
  return ParseTree{internal::RandomIntent(rng, params, 1)};
}

}  // namespace slurover

#endif  // SLUROVER_PARSE_TREE_HPP_

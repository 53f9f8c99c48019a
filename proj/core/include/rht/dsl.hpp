#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rht/gca.hpp"
#include "rht/linalg.hpp"

namespace rht::dsl {

struct Diagnostic {
  int line = 0, col = 0;
  std::string message;
  std::vector<std::string> expected;  // candidate tokens at parse errors
  std::string str() const;
};

enum class BaseKind { None, S2, Named };

/// Bound form of a model document: the presentation plus the optional
/// symplectic, torus-rank, base and classifying-map declarations.
struct ModelDocument {
  explicit ModelDocument(GcaPresentation p) : presentation(std::move(p)) {}

  std::string name = "model";
  GcaPresentation presentation;
  std::optional<Poly> symplectic;
  std::string symplectic_name;
  std::optional<int> torus_k;
  BaseKind base_kind = BaseKind::None;
  std::vector<std::string> base_names;
  /// Canonical class-name keys with values over base_names, sorted by key.
  std::vector<std::pair<std::string, Vec>> classify;
};

struct ParseResult {
  std::optional<ModelDocument> doc;
  std::optional<Diagnostic> error;
  bool ok() const { return doc.has_value(); }
};

/// Parses and binds a document. Statements are separated by newlines or ';';
/// '#' starts a comment. Generators must be declared before use.
ParseResult parse(const std::string& text);

/// Canonical rendering; parse(print(parse(text))) equals parse(text).
std::string print(const ModelDocument& doc);

}  // namespace rht::dsl

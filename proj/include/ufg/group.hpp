#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ufg/isometry.hpp"
#include "ufg/models.hpp"

namespace ufg {

struct Generator {
  std::string name;
  Isometry matrix;
};

struct Letter {
  std::uint16_t gen = 0;  // index into GeneratingSet::generators()
  bool inverse = false;
  friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

class GeneratingSet {
 public:
  // Throws InvalidInput on an empty list, duplicate names, or an identity
  // generator (unless allowed).
  explicit GeneratingSet(std::vector<Generator> generators, bool allow_identity = false);

  const std::vector<Generator>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }

  // [g1, g1^-1, g2, g2^-1, ...] with projective duplicates removed (an
  // involution contributes one letter).
  const std::vector<Letter>& closure() const { return closure_letters_; }
  const std::vector<Isometry>& closure_matrices() const { return closure_matrices_; }

  const Isometry& matrix(Letter l) const;
  std::string letter_name(Letter l) const;  // "T" or "T^-1"
  std::vector<std::string> word_names(const Word& w) const;
  std::string word_string(const Word& w) const;  // space separated; "e" when empty
  Isometry evaluate(const Word& w) const;
  // Parses names as produced by letter_name. Throws InvalidInput.
  Word parse_word(const std::vector<std::string>& names) const;

  std::uint64_t hash() const;

 private:
  std::vector<Generator> gens_;
  std::vector<Isometry> inverses_;
  std::vector<Letter> closure_letters_;
  std::vector<Isometry> closure_matrices_;
};

// Parsed group description file.
struct GroupDescription {
  std::string model = "H2";
  std::vector<Generator> generators;
  std::vector<Horoball> horoballs;
};

// Throws InvalidInput with a JSON-path location on any malformed field.
GroupDescription parse_group_description(const std::string& json_text, const std::string& origin = "<input>");
GroupDescription load_group_description(const std::string& path);

}  // namespace ufg

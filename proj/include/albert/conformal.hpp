#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "albert/cubicnorm.hpp"
#include "albert/strgroup.hpp"

namespace albert::conf {

using cubic::StructurePtr;
using linalg::Mat;
using linalg::Vec;

// One letter of a partial birational word: a translation t_a(x) = x + a, the
// inversion j(x) = -x^{-1}, or a structure-group word.
struct Letter {
  enum class Kind { Translate, InvertJ, Str } kind;
  Vec a;                               // Translate
  std::shared_ptr<strg::Word> w;       // Str
};

Letter translate_letter(Vec a);
Letter j_letter();
Letter str_letter(strg::Word w);

struct EvalResult {
  bool defined = false;
  Vec value;
  std::size_t undefined_step = 0; // index of the first singular inversion
};

// Decomposition of a word matching w o t_a o j o t_b o j o t_c (application
// order: t_c, j, t_b, j, t_a, then the structure word). Missing translations
// read as zero; a missing trailing structure word reads as the identity.
struct NormalForm {
  Vec a, b, c;
  std::shared_ptr<strg::Word> w; // null = identity
};

struct DomainReport {
  std::size_t trials = 0;
  std::size_t defined = 0;
};

// A word over {t_a, j, strWord}; letters are stored in application order
// (letters[0] acts first). Evaluation is a partial map, undefined exactly
// when an intermediate inversion hits a singular point.
class Word {
public:
  static Word make(StructurePtr s, std::vector<Letter> letters);
  static Word identity(StructurePtr s);

  const StructurePtr& structure() const { return s_; }
  const std::vector<Letter>& letters() const { return letters_; }

  // Cached at construction when the letter list matches the shape above.
  const std::optional<NormalForm>& normal_form() const { return normal_form_; }

  EvalResult eval(const Vec& x) const;

  // Concatenation: apply this word, then next.
  Word then(const Word& next) const;

  // Local rewrites (t_a t_b -> t_{a+b}, j j -> id, str merge, unit drops),
  // then exact semantic agreement with the original on at least
  // `check_points` random points where both sides are defined.
  Word simplified(std::uint64_t seed, std::size_t check_points = 20) const;

  DomainReport sample_domain(std::size_t trials, std::uint64_t seed) const;

private:
  void detect_normal_form();

  StructurePtr s_;
  std::vector<Letter> letters_;
  std::optional<NormalForm> normal_form_;
};

} // namespace albert::conf

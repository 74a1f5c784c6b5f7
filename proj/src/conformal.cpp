#include "albert/conformal.hpp"

#include "albert/error.hpp"
#include "albert/rng.hpp"

namespace albert::conf {

Letter translate_letter(Vec a) {
  Letter l;
  l.kind = Letter::Kind::Translate;
  l.a = std::move(a);
  return l;
}

Letter j_letter() {
  Letter l;
  l.kind = Letter::Kind::InvertJ;
  return l;
}

Letter str_letter(strg::Word w) {
  Letter l;
  l.kind = Letter::Kind::Str;
  l.w = std::make_shared<strg::Word>(std::move(w));
  return l;
}

Word Word::make(StructurePtr s, std::vector<Letter> letters) {
  Word w;
  w.s_ = std::move(s);
  for (const auto& l : letters) {
    if (l.kind == Letter::Kind::Translate && l.a.size() != w.s_->dim())
      fail(Errc::DimensionMismatch, "translation vector length");
    if (l.kind == Letter::Kind::Str && l.w->structure().get() != w.s_.get())
      fail(Errc::SpecMismatch, "structure word over a different structure");
  }
  w.letters_ = std::move(letters);
  w.detect_normal_form();
  return w;
}

Word Word::identity(StructurePtr s) { return make(std::move(s), {}); }

void Word::detect_normal_form() {
  normal_form_.reset();
  std::size_t i = 0;
  auto take_translate = [&]() {
    if (i < letters_.size() && letters_[i].kind == Letter::Kind::Translate) return letters_[i++].a;
    return linalg::zero_vec(s_->dim());
  };
  auto take_j = [&]() {
    if (i < letters_.size() && letters_[i].kind == Letter::Kind::InvertJ) {
      ++i;
      return true;
    }
    return false;
  };
  NormalForm nf;
  nf.c = take_translate();
  if (!take_j()) return;
  nf.b = take_translate();
  if (!take_j()) return;
  nf.a = take_translate();
  if (i < letters_.size() && letters_[i].kind == Letter::Kind::Str) nf.w = letters_[i++].w;
  if (i != letters_.size()) return;
  normal_form_ = std::move(nf);
}

EvalResult Word::eval(const Vec& x) const {
  EvalResult r;
  Vec cur = x;
  for (std::size_t step = 0; step < letters_.size(); ++step) {
    const Letter& l = letters_[step];
    switch (l.kind) {
      case Letter::Kind::Translate: cur = linalg::add(cur, l.a); break;
      case Letter::Kind::InvertJ: {
        if (s_->norm(cur).is_zero()) {
          r.defined = false;
          r.undefined_step = step;
          return r;
        }
        cur = linalg::neg(s_->inverse(cur));
        break;
      }
      case Letter::Kind::Str: cur = l.w->apply(cur); break;
    }
  }
  r.defined = true;
  r.value = std::move(cur);
  return r;
}

Word Word::then(const Word& next) const {
  if (s_.get() != next.s_.get()) fail(Errc::SpecMismatch, "words over different structures");
  std::vector<Letter> letters = letters_;
  letters.insert(letters.end(), next.letters_.begin(), next.letters_.end());
  return make(s_, std::move(letters));
}

Word Word::simplified(std::uint64_t seed, std::size_t check_points) const {
  std::vector<Letter> out = letters_;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Letter> next;
    for (std::size_t i = 0; i < out.size(); ++i) {
      // unit letters vanish
      if (out[i].kind == Letter::Kind::Translate && linalg::is_zero(out[i].a)) {
        changed = true;
        continue;
      }
      if (out[i].kind == Letter::Kind::Str && out[i].w->op().is_identity()) {
        changed = true;
        continue;
      }
      if (i + 1 < out.size()) {
        const Letter& a = out[i];
        const Letter& b = out[i + 1];
        if (a.kind == Letter::Kind::Translate && b.kind == Letter::Kind::Translate) {
          next.push_back(translate_letter(linalg::add(a.a, b.a)));
          ++i;
          changed = true;
          continue;
        }
        if (a.kind == Letter::Kind::InvertJ && b.kind == Letter::Kind::InvertJ) {
          ++i;
          changed = true;
          continue;
        }
        if (a.kind == Letter::Kind::Str && b.kind == Letter::Kind::Str) {
          // a acts first, then b: combined operator is b o a
          next.push_back(str_letter(b.w->composed_with(*a.w)));
          ++i;
          changed = true;
          continue;
        }
      }
      next.push_back(out[i]);
    }
    out = std::move(next);
  }
  Word simp = make(s_, std::move(out));
  // exact semantic agreement where both sides are defined
  Rng rng(seed);
  std::size_t agreed = 0, attempts = 0;
  const std::size_t max_attempts = check_points * 50 + 100;
  while (agreed < check_points && attempts < max_attempts) {
    ++attempts;
    Vec x = rng.vec(s_->dim());
    EvalResult a = eval(x);
    EvalResult b = simp.eval(x);
    if (!a.defined || !b.defined) continue;
    if (a.value != b.value)
      fail(Errc::CertificationFailure, "rewrite changed the map at " + linalg::to_string(x));
    ++agreed;
  }
  if (agreed < check_points)
    fail(Errc::CertificationFailure, "could not find enough commonly defined sample points");
  return simp;
}

DomainReport Word::sample_domain(std::size_t trials, std::uint64_t seed) const {
  DomainReport rep;
  rep.trials = trials;
  Rng rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    Vec x = rng.vec(s_->dim());
    if (eval(x).defined) ++rep.defined;
  }
  return rep;
}

} // namespace albert::conf

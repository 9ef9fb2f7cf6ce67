#pragma once

#include <string>
#include <vector>

#include "thompson/numerics.hpp"

namespace thompson {

struct SchurReport {
  bool ok = true;
  std::size_t pairs_checked = 0;
  std::vector<std::string> failures;
};

struct MultiplicityVector {
  long n = 0;
  std::vector<Rat> m;  // indexed by character
};

// Directory holding the checked-in data files; $THOMPSON_DATA_DIR overrides
// the build-time location.
std::string data_dir();

class CharacterTable {
 public:
  // Parses and validates (shape, trivial row, duplicate rows, conjugate
  // pairing, Schur orthogonality). Throws std::runtime_error with the reason.
  static CharacterTable load(const std::string& path);
  // The table shipped in data/thompson_characters.txt, loaded once.
  static const CharacterTable& thompson();

  std::size_t size() const { return classes_.size(); }
  const std::vector<std::string>& classes() const { return classes_; }
  // Throws std::out_of_range for unknown labels.
  std::size_t class_index(const std::string& label) const;
  long class_order(std::size_t cls) const { return orders_[cls]; }
  const QuadIm& value(std::size_t chi, std::size_t cls) const { return chars_[chi][cls]; }

  // |C(g)| = sum_j |chi_j(g)|^2.
  const Int& centralizer_order(std::size_t cls) const { return centralizers_[cls]; }
  const Int& centralizer_order(const std::string& label) const { return centralizers_[class_index(label)]; }
  const Int& group_order() const { return centralizers_[0]; }
  Int class_size(std::size_t cls) const { return group_order() / centralizers_[cls]; }
  // Index of the class whose column is the complex conjugate of cls.
  std::size_t conjugate_class(std::size_t cls) const { return conj_class_[cls]; }

  // First orthogonality relation over all 48^2 pairs, exactly.
  SchurReport schur_check() const;
  // Second orthogonality relation (columns).
  SchurReport column_check() const;

  // m_j = sum_g (1/|C(g)|) (-1)^n omega(g) conj(chi_j(g)); omega is indexed by class.
  MultiplicityVector decompose(const std::vector<Rat>& omega, long n) const;

 private:
  void derive();

  std::vector<std::string> classes_;
  std::vector<long> orders_;
  std::vector<std::vector<QuadIm>> chars_;
  std::vector<Int> centralizers_;
  std::vector<std::size_t> conj_class_;
};

}  // namespace thompson

#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace lexenum {

// A permutation of the variable indices 0..n-1, stored as an image table:
// image()[i] is where index i is sent.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> image);

    static Permutation identity(int n);
    static Permutation transposition(int n, int a, int b);

    int degree() const { return static_cast<int>(image_.size()); }
    int operator()(int i) const { return image_[i]; }
    const std::vector<int>& image() const { return image_; }

    Permutation inverse() const;
    // Composition in application order: (f.then(g))(i) == g(f(i)).
    Permutation then(const Permutation& g) const;

    bool is_identity() const;
    bool is_involution() const;

    // Swapped pairs (a, b) with a < b of an involution, sorted by a.
    // Throws std::invalid_argument if the permutation is not an involution.
    std::vector<std::pair<int, int>> transpositions() const;

    bool operator==(const Permutation&) const = default;
    bool operator<(const Permutation& other) const { return image_ < other.image_; }

private:
    std::vector<int> image_;
};

// True when image is a bijection on {0, .., image.size()-1}.
bool is_permutation_image(const std::vector<int>& image);

} // namespace lexenum

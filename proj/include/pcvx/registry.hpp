#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcvx {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class VarRole { RealPart, ImagPart, AbstractReal };

/// One complex coordinate owning a (real, imag) variable pair.
struct ComplexCoord {
    std::string name;
    int re_idx;
    int im_idx;
};

/// Ordered list of real variable names with role tags. Polynomials reference
/// a registry by pointer; two polynomials interoperate only when they share
/// the same registry object.
class VarRegistry {
  public:
    static std::shared_ptr<const VarRegistry> make_real(std::vector<std::string> names);

    /// Builds a registry of (re, im) pairs for the given complex coordinate
    /// names. Pair variable names are supplied explicitly so that the domain
    /// conventions (x/y for z, u_j/v_j for w_j, ...) are kept.
    static std::shared_ptr<const VarRegistry> make_complex(
        std::vector<std::string> coord_names,
        std::vector<std::pair<std::string, std::string>> pair_names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(i); }
    VarRole role(int i) const { return roles_.at(i); }

    int index_of(const std::string& name) const {
        for (int i = 0; i < size(); ++i)
            if (names_[i] == name) return i;
        throw Error("unknown variable: " + name);
    }
    bool has(const std::string& name) const {
        for (const auto& n : names_)
            if (n == name) return true;
        return false;
    }

    int num_complex() const { return static_cast<int>(coords_.size()); }
    const ComplexCoord& coord(int i) const { return coords_.at(i); }
    const ComplexCoord& coord(const std::string& name) const {
        for (const auto& c : coords_)
            if (c.name == name) return c;
        throw Error("unknown complex coordinate: " + name);
    }

  private:
    std::vector<std::string> names_;
    std::vector<VarRole> roles_;
    std::vector<ComplexCoord> coords_;
};

using RegistryPtr = std::shared_ptr<const VarRegistry>;

}  // namespace pcvx

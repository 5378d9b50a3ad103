// Copyright 2026 The Toric Mismatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "toric/pauli.h"

namespace toric {

enum class EdgeType : std::uint8_t { Horizontal = 0, Vertical = 1 };

/// L1 is a copy of the primal lattice, L2 its dual. Both are stored with the
/// same n x n geometry; the half-unit shift only shows up in how qubit errors
/// are mapped onto L2 bonds.
enum class LatticeId : std::uint8_t { L1 = 0, L2 = 1 };

const char* to_string(LatticeId id);
const char* to_string(EdgeType t);

struct Vertex {
    int row = 0;
    int col = 0;
    auto operator<=>(const Vertex&) const = default;
};

/// Edge (row, col, type). Horizontal edges join (r, c) to (r, c+1); vertical
/// edges join (r, c) to (r+1, c).
struct QubitIndex {
    int row = 0;
    int col = 0;
    EdgeType type = EdgeType::Horizontal;
    auto operator<=>(const QubitIndex&) const = default;
};

/// Torus distance in each direction.
struct Separation {
    int horizontal = 0;
    int vertical = 0;
    bool operator==(const Separation&) const = default;
};

/// Geometry of the n x n periodic lattice. Qubits (and bonds of each
/// decoding lattice) are laid out as 2 * (row * n + col) + type.
class LatticeGeometry {
   public:
    explicit LatticeGeometry(int n);

    int n() const { return n_; }
    std::size_t qubit_count() const { return 2 * static_cast<std::size_t>(n_) * n_; }
    std::size_t vertex_count() const { return static_cast<std::size_t>(n_) * n_; }

    int wrap(int x) const {
        x %= n_;
        return x < 0 ? x + n_ : x;
    }

    std::size_t index(const QubitIndex& q) const {
        return 2 * (static_cast<std::size_t>(wrap(q.row)) * n_ + wrap(q.col)) + static_cast<std::size_t>(q.type);
    }
    QubitIndex qubit(std::size_t index) const;

    std::size_t vertex_index(const Vertex& v) const {
        return static_cast<std::size_t>(wrap(v.row)) * n_ + wrap(v.col);
    }
    Vertex vertex(std::size_t index) const {
        return {static_cast<int>(index / n_), static_cast<int>(index % n_)};
    }

    std::size_t horizontal_bond(int row, int col) const { return index({row, col, EdgeType::Horizontal}); }
    std::size_t vertical_bond(int row, int col) const { return index({row, col, EdgeType::Vertical}); }

    /// The two vertices a bond joins.
    std::pair<Vertex, Vertex> endpoints(std::size_t bond) const;

    /// Bonds touching a vertex: right, left, down, up.
    std::array<std::size_t, 4> incident_bonds(const Vertex& v) const;

    /// The two faces (dual vertices) separated by a bond. Face (r, c) is the
    /// square with corners (r, c) and (r+1, c+1).
    std::pair<Vertex, Vertex> adjacent_faces(std::size_t bond) const;

    /// Bonds bounding a face: top, bottom, left, right.
    std::array<std::size_t, 4> face_bonds(const Vertex& f) const;

   private:
    int n_;
};

/// +-1 bond variables on one decoding lattice.
class BondConfiguration {
   public:
    BondConfiguration() = default;
    BondConfiguration(const LatticeGeometry& geometry, LatticeId id)
        : id_(id), tau_(geometry.qubit_count(), 1) {}

    LatticeId lattice_id() const { return id_; }
    std::size_t size() const { return tau_.size(); }

    int tau(std::size_t bond) const { return tau_[bond]; }
    bool flipped(std::size_t bond) const { return tau_[bond] < 0; }
    void flip(std::size_t bond) { tau_[bond] = static_cast<std::int8_t>(-tau_[bond]); }
    void set(std::size_t bond, int value);

    std::size_t count_flipped() const;

    /// Elementwise product (composition of error chains).
    BondConfiguration& operator*=(const BondConfiguration& other);
    friend BondConfiguration operator*(BondConfiguration a, const BondConfiguration& b) { return a *= b; }

    bool operator==(const BondConfiguration&) const = default;

   private:
    LatticeId id_ = LatticeId::L1;
    std::vector<std::int8_t> tau_;
};

/// Vertices with -1 stabilizer parity, sorted by vertex index.
struct Syndrome {
    LatticeId lattice_id = LatticeId::L1;
    std::vector<Vertex> anyons;

    bool empty() const { return anyons.empty(); }
    std::size_t size() const { return anyons.size(); }
};

/// Homology class of a closed bond configuration, as parities of flipped bonds
/// crossing a fixed vertical cut (horizontal winding) and a fixed horizontal
/// cut (vertical winding). Composition is XOR, giving Z2 x Z2.
struct LogicalClass {
    bool horizontal = false;
    bool vertical = false;

    bool trivial() const { return !horizontal && !vertical; }
    int code() const { return (horizontal ? 1 : 0) | (vertical ? 2 : 0); }
    static LogicalClass from_code(int code) { return {(code & 1) != 0, (code & 2) != 0}; }

    /// Report label: Identity, Logical1, Logical2 or Both.
    const char* label() const;

    LogicalClass operator^(const LogicalClass& o) const {
        return {horizontal != o.horizontal, vertical != o.vertical};
    }
    bool operator==(const LogicalClass&) const = default;
};

/// Splits qubit errors onto the two decoding lattices. X errors always land on
/// Horizontal bonds and Z errors on Vertical bonds; a horizontal-edge qubit
/// sends X to L1 and Z to L2, a vertical-edge qubit the other way round.
std::pair<BondConfiguration, BondConfiguration> map_errors_to_bonds(const LatticeGeometry& geometry,
                                                                     const PauliErrorPattern& errors);

Syndrome extract_syndrome(const LatticeGeometry& geometry, const BondConfiguration& config);

Separation torus_separation(const LatticeGeometry& geometry, const Vertex& a, const Vertex& b);

/// Cut parities without checking that the configuration is closed.
LogicalClass cut_parities(const LatticeGeometry& geometry, const BondConfiguration& config);

/// Throws PreconditionError if the configuration has a nonempty syndrome.
LogicalClass homology_class(const LatticeGeometry& geometry, const BondConfiguration& config);

/// Text dump: a header with n and lattice id, then one tau per line in bond
/// index order.
void write_bond_dump(std::ostream& out, const LatticeGeometry& geometry, const BondConfiguration& config);
std::pair<LatticeGeometry, BondConfiguration> read_bond_dump(std::istream& in);

}  // namespace toric

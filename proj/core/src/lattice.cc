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

#include "toric/lattice.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "toric/error.h"

namespace toric {

std::size_t PauliErrorPattern::count_x() const {
    return static_cast<std::size_t>(std::count_if(flags_.begin(), flags_.end(), [](auto f) { return f & kX; }));
}

std::size_t PauliErrorPattern::count_z() const {
    return static_cast<std::size_t>(std::count_if(flags_.begin(), flags_.end(), [](auto f) { return f & kZ; }));
}

const char* to_string(LatticeId id) { return id == LatticeId::L1 ? "L1" : "L2"; }

const char* to_string(EdgeType t) { return t == EdgeType::Horizontal ? "H" : "V"; }

LatticeGeometry::LatticeGeometry(int n) : n_(n) {
    if (n < 2) {
        throw StructuralError("lattice size must be at least 2, got " + std::to_string(n));
    }
}

QubitIndex LatticeGeometry::qubit(std::size_t index) const {
    if (index >= qubit_count()) {
        throw StructuralError("qubit index " + std::to_string(index) + " out of range");
    }
    auto site = index / 2;
    return {static_cast<int>(site / n_), static_cast<int>(site % n_),
            (index & 1) ? EdgeType::Vertical : EdgeType::Horizontal};
}

std::pair<Vertex, Vertex> LatticeGeometry::endpoints(std::size_t bond) const {
    auto q = qubit(bond);
    if (q.type == EdgeType::Horizontal) {
        return {{q.row, q.col}, {q.row, wrap(q.col + 1)}};
    }
    return {{q.row, q.col}, {wrap(q.row + 1), q.col}};
}

std::array<std::size_t, 4> LatticeGeometry::incident_bonds(const Vertex& v) const {
    return {horizontal_bond(v.row, v.col), horizontal_bond(v.row, v.col - 1), vertical_bond(v.row, v.col),
            vertical_bond(v.row - 1, v.col)};
}

std::pair<Vertex, Vertex> LatticeGeometry::adjacent_faces(std::size_t bond) const {
    auto q = qubit(bond);
    if (q.type == EdgeType::Horizontal) {
        return {{wrap(q.row - 1), q.col}, {q.row, q.col}};
    }
    return {{q.row, wrap(q.col - 1)}, {q.row, q.col}};
}

std::array<std::size_t, 4> LatticeGeometry::face_bonds(const Vertex& f) const {
    return {horizontal_bond(f.row, f.col), horizontal_bond(f.row + 1, f.col), vertical_bond(f.row, f.col),
            vertical_bond(f.row, f.col + 1)};
}

void BondConfiguration::set(std::size_t bond, int value) {
    if (value != 1 && value != -1) {
        throw StructuralError("bond value must be +1 or -1, got " + std::to_string(value));
    }
    tau_[bond] = static_cast<std::int8_t>(value);
}

std::size_t BondConfiguration::count_flipped() const {
    return static_cast<std::size_t>(std::count(tau_.begin(), tau_.end(), std::int8_t{-1}));
}

BondConfiguration& BondConfiguration::operator*=(const BondConfiguration& other) {
    if (other.tau_.size() != tau_.size()) {
        throw StructuralError("bond configurations differ in size");
    }
    for (std::size_t i = 0; i < tau_.size(); ++i) {
        tau_[i] = static_cast<std::int8_t>(tau_[i] * other.tau_[i]);
    }
    return *this;
}

const char* LogicalClass::label() const {
    switch (code()) {
        case 0:
            return "Identity";
        case 1:
            return "Logical1";
        case 2:
            return "Logical2";
        default:
            return "Both";
    }
}

std::pair<BondConfiguration, BondConfiguration> map_errors_to_bonds(const LatticeGeometry& geometry,
                                                                     const PauliErrorPattern& errors) {
    if (errors.size() != geometry.qubit_count()) {
        throw StructuralError("error pattern has " + std::to_string(errors.size()) + " qubits, lattice has " +
                              std::to_string(geometry.qubit_count()));
    }
    BondConfiguration l1(geometry, LatticeId::L1);
    BondConfiguration l2(geometry, LatticeId::L2);
    for (std::size_t i = 0; i < errors.size(); ++i) {
        bool x = errors.x(i);
        bool z = errors.z(i);
        if (!x && !z) continue;
        auto q = geometry.qubit(i);
        if (q.type == EdgeType::Horizontal) {
            if (x) l1.flip(i);
            // The dual edge crossing a horizontal primal edge is vertical.
            if (z) l2.flip(geometry.vertical_bond(q.row - 1, q.col));
        } else {
            if (x) l2.flip(geometry.horizontal_bond(q.row, q.col - 1));
            if (z) l1.flip(i);
        }
    }
    return {std::move(l1), std::move(l2)};
}

Syndrome extract_syndrome(const LatticeGeometry& geometry, const BondConfiguration& config) {
    if (config.size() != geometry.qubit_count()) {
        throw StructuralError("bond configuration does not match lattice size");
    }
    Syndrome s;
    s.lattice_id = config.lattice_id();
    const int n = geometry.n();
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            int parity = 1;
            for (auto b : geometry.incident_bonds({r, c})) parity *= config.tau(b);
            if (parity < 0) s.anyons.push_back({r, c});
        }
    }
    return s;
}

Separation torus_separation(const LatticeGeometry& geometry, const Vertex& a, const Vertex& b) {
    const int n = geometry.n();
    int dc = geometry.wrap(b.col - a.col);
    int dr = geometry.wrap(b.row - a.row);
    return {std::min(dc, n - dc), std::min(dr, n - dr)};
}

LogicalClass cut_parities(const LatticeGeometry& geometry, const BondConfiguration& config) {
    const int n = geometry.n();
    bool h = false;
    bool v = false;
    for (int i = 0; i < n; ++i) {
        // Horizontal bonds leaving the last column cross the vertical cut.
        if (config.flipped(geometry.horizontal_bond(i, n - 1))) h = !h;
        // Vertical bonds leaving the last row cross the horizontal cut.
        if (config.flipped(geometry.vertical_bond(n - 1, i))) v = !v;
    }
    return {h, v};
}

LogicalClass homology_class(const LatticeGeometry& geometry, const BondConfiguration& config) {
    auto s = extract_syndrome(geometry, config);
    if (!s.empty()) {
        throw PreconditionError("homology class requires a closed configuration, found " +
                                std::to_string(s.size()) + " anyons");
    }
    return cut_parities(geometry, config);
}

void write_bond_dump(std::ostream& out, const LatticeGeometry& geometry, const BondConfiguration& config) {
    out << "# toric bond dump v1\n";
    out << "n " << geometry.n() << "\n";
    out << "lattice " << to_string(config.lattice_id()) << "\n";
    out << "bonds " << config.size() << "\n";
    for (std::size_t i = 0; i < config.size(); ++i) {
        out << (config.tau(i) > 0 ? "1" : "-1") << "\n";
    }
}

std::pair<LatticeGeometry, BondConfiguration> read_bond_dump(std::istream& in) {
    std::string line;
    int n = -1;
    std::string lattice;
    long long bonds = -1;
    while (bonds < 0 && std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "n") {
            ls >> n;
        } else if (key == "lattice") {
            ls >> lattice;
        } else if (key == "bonds") {
            ls >> bonds;
        } else {
            throw StructuralError("unexpected header line in bond dump: " + line);
        }
    }
    if (n < 2 || (lattice != "L1" && lattice != "L2") || bonds < 0) {
        throw StructuralError("incomplete bond dump header");
    }
    LatticeGeometry geometry(n);
    if (static_cast<std::size_t>(bonds) != geometry.qubit_count()) {
        throw StructuralError("bond count does not match n");
    }
    BondConfiguration config(geometry, lattice == "L1" ? LatticeId::L1 : LatticeId::L2);
    for (std::size_t i = 0; i < config.size(); ++i) {
        int t = 0;
        if (!(in >> t)) throw StructuralError("bond dump truncated at bond " + std::to_string(i));
        config.set(i, t);
    }
    return {geometry, std::move(config)};
}

}  // namespace toric

#pragma once

#include "sgpic/gpc.hpp"

#include <cstddef>

namespace sgpic {

/// Boundary condition for the Poisson problem.
enum class FieldBoundary { Periodic, DirichletZero };

/// Particle shape used for deposition and field gather. TopHat counts the
/// particle in its cell and reads that cell's field; Linear (cloud-in-cell)
/// shares it between the two nearest cell centres.
enum class Shape { TopHat, Linear };

/// Cells touched by one particle and the share carried by the second.
struct ShapeSplit {
    std::size_t first;
    std::size_t second;
    double second_share;
};

/// N_l uniform cells on [x_min, x_max]; the potential lives on the N_l+1 cell edges.
class SpatialGrid {
public:
    SpatialGrid(Interval domain, int n_cells, FieldBoundary bc, Shape shape = Shape::TopHat);

    double x_min() const { return domain_.lo; }
    double x_max() const { return domain_.hi; }
    double length() const { return domain_.length(); }
    Interval domain() const { return domain_; }
    std::size_t n_cells() const { return n_cells_; }
    std::size_t n_edges() const { return n_cells_ + 1; }
    double dx() const { return dx_; }
    FieldBoundary bc() const { return bc_; }
    Shape shape() const { return shape_; }

    double edge(std::size_t j) const { return domain_.lo + static_cast<double>(j) * dx_; }
    double center(std::size_t l) const { return domain_.lo + (static_cast<double>(l) + 0.5) * dx_; }

    bool inside(double x) const { return x >= domain_.lo && x <= domain_.hi; }

    /// Modular reduction into [x_min, x_max].
    double wrap(double x) const;
    /// Mirror fold into [x_min, x_max] (reduction modulo 2L, then reflection).
    double fold(double x) const;
    /// Map a realized position into the domain: wrap on a periodic grid,
    /// fold otherwise. Identity for positions already inside.
    ///
    /// Needed because projecting wrapped or folded node values onto the basis
    /// is a least-squares fit when K > M+1, so the new expansion need not hit
    /// the domain exactly at every node.
    double reduce(double x) const { return bc_ == FieldBoundary::Periodic ? wrap(x) : fold(x); }

    /// Index of the cell containing x; x_max belongs to the last cell.
    /// Throws LogicError for positions outside the domain; wrap and fold
    /// throw NumericalError for non-finite input.
    std::size_t cell_of(double x) const;
    /// Shape weights of a position inside the domain. Linear shapes wrap at
    /// periodic ends and fold into the edge cell otherwise.
    ShapeSplit split(double x) const;

private:
    Interval domain_;
    std::size_t n_cells_;
    double dx_;
    FieldBoundary bc_;
    Shape shape_;
};

} // namespace sgpic

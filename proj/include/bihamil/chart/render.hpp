#pragma once

#include <string>

#include "bihamil/chart/fields.hpp"

namespace bihamil {

// Canonical text: terms in index order, "(coefficient)*basis" joined by " + ",
// "0" for the zero field.
std::string render(const KForm& f);
std::string render(const Multivector& p);
std::string render(const VectorField& x);
std::string render(const Tensor11& t);
std::string render(const Tensor1r& t);
std::string render(const QMatrix& m);  // [[a, b], [c, d]]
std::string render(const Point& p);    // a,b,c

}  // namespace bihamil

#pragma once

#include "fermifold/errors.hpp"
#include "fermifold/grading.hpp"
#include "fermifold/fock.hpp"
#include "fermifold/dense.hpp"
#include "fermifold/scalar.hpp"
#include "fermifold/expr.hpp"
#include "fermifold/parse.hpp"
#include "fermifold/normal_order.hpp"
#include "fermifold/observable.hpp"
#include "fermifold/fields.hpp"
#include "fermifold/polynomial.hpp"
#include "fermifold/coefficient.hpp"
#include "fermifold/forms.hpp"
#include "fermifold/maps.hpp"
#include "fermifold/quadrature.hpp"
#include "fermifold/lie.hpp"
#include "fermifold/tensor.hpp"
#include "fermifold/slater_form.hpp"

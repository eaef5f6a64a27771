// Everything in one include.

#ifndef HELLYFIX_HELLYFIX_HPP_
#define HELLYFIX_HELLYFIX_HPP_

#define HELLYFIX_VERSION "0.1.0"

#include "automorphism.hpp"
#include "builtin.hpp"
#include "certificate.hpp"
#include "checker.hpp"
#include "convex.hpp"
#include "duplication.hpp"
#include "families.hpp"
#include "group.hpp"
#include "helly.hpp"
#include "matrix.hpp"
#include "simplicial.hpp"
#include "word.hpp"

#endif

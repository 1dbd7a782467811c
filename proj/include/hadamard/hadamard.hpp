#pragma once

#include "hadamard/character.hpp"
#include "hadamard/construct.hpp"
#include "hadamard/cyclotomic.hpp"
#include "hadamard/defect.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/exact.hpp"
#include "hadamard/group.hpp"
#include "hadamard/io.hpp"
#include "hadamard/matrix.hpp"
#include "hadamard/numeric_rank.hpp"
#include "hadamard/phase.hpp"
#include "hadamard/rational.hpp"
#include "hadamard/scan.hpp"
#include "hadamard/spec.hpp"
#include "hadamard/tangent.hpp"

#pragma once

#include "qsh/alphabet.hpp"
#include "qsh/diamond.hpp"
#include "qsh/errors.hpp"
#include "qsh/format.hpp"
#include "qsh/involutions.hpp"
#include "qsh/laurent.hpp"
#include "qsh/ncpoly.hpp"
#include "qsh/parser.hpp"
#include "qsh/product.hpp"
#include "qsh/rational.hpp"
#include "qsh/relations.hpp"
#include "qsh/series.hpp"
#include "qsh/text.hpp"
#include "qsh/word.hpp"

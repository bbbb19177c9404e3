#pragma once

#include "hl/algebra.hpp"
#include "hl/catalogue.hpp"
#include "hl/decide.hpp"
#include "hl/enumerate.hpp"
#include "hl/error.hpp"
#include "hl/fmp.hpp"
#include "hl/frames.hpp"
#include "hl/generate.hpp"
#include "hl/json_io.hpp"
#include "hl/parse.hpp"
#include "hl/print.hpp"
#include "hl/relation.hpp"
#include "hl/semantics.hpp"
#include "hl/syntax.hpp"
#include "hl/translation.hpp"

#pragma once

#include "words.hpp"
#include "graph.hpp"
#include "stallings.hpp"
#include "endo2.hpp"
#include "dynamics.hpp"
#include "orbit.hpp"
#include "io.hpp"

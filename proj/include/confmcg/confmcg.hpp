#pragma once

#include <confmcg/cohomology.hpp>
#include <confmcg/commutators.hpp>
#include <confmcg/errors.hpp>
#include <confmcg/extalg.hpp>
#include <confmcg/freegroup.hpp>
#include <confmcg/johnson.hpp>
#include <confmcg/matrix.hpp>
#include <confmcg/mcg.hpp>
#include <confmcg/nielsen.hpp>
#include <confmcg/rational.hpp>

#pragma once

#include "gaudin/errors.hpp"
#include "gaudin/core_model.hpp"
#include "gaudin/linalg.hpp"
#include "gaudin/random.hpp"
#include "gaudin/bethe.hpp"
#include "gaudin/norms.hpp"
#include "gaudin/oracle.hpp"
#include "gaudin/six_vertex.hpp"
#include "gaudin/properties.hpp"

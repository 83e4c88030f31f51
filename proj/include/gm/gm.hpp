#ifndef GM_GM_HPP
#define GM_GM_HPP

// Umbrella header: Gauss-Manin connection data of isolated hypersurface
// singularities over exact rational arithmetic.

#include "gm/brieskorn.hpp"
#include "gm/connection.hpp"
#include "gm/errors.hpp"
#include "gm/forms.hpp"
#include "gm/linalg.hpp"
#include "gm/local_basis.hpp"
#include "gm/multipoly.hpp"
#include "gm/parser.hpp"
#include "gm/pipeline.hpp"
#include "gm/rational.hpp"
#include "gm/series.hpp"

#endif // GM_GM_HPP

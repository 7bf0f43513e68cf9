#pragma once

#include "lenscert/cell_structure.hpp"
#include "lenscert/certificate.hpp"
#include "lenscert/error.hpp"
#include "lenscert/galois.hpp"
#include "lenscert/group.hpp"
#include "lenscert/int_matrix.hpp"
#include "lenscert/orientation.hpp"
#include "lenscert/pipeline.hpp"
#include "lenscert/presentation.hpp"
#include "lenscert/projmat.hpp"
#include "lenscert/smith.hpp"
#include "lenscert/sweep.hpp"
#include "lenscert/trianglerep.hpp"
#include "lenscert/triangulation.hpp"
#include "lenscert/validation.hpp"

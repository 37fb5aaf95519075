#ifndef QCB_QCB_HPP
#define QCB_QCB_HPP

// Umbrella header.

#include "qcb/bounds.hpp"
#include "qcb/campaign.hpp"
#include "qcb/entropy.hpp"
#include "qcb/eof.hpp"
#include "qcb/errors.hpp"
#include "qcb/gibbs.hpp"
#include "qcb/io.hpp"
#include "qcb/matrix.hpp"
#include "qcb/qcstate.hpp"
#include "qcb/rng.hpp"
#include "qcb/sampling.hpp"
#include "qcb/scalars.hpp"
#include "qcb/spectrum.hpp"
#include "qcb/version.hpp"

#endif  // QCB_QCB_HPP

#pragma once

// Umbrella header for the whole library.

#include "iwb/calculi.hpp"
#include "iwb/error.hpp"
#include "iwb/frames.hpp"
#include "iwb/interpolate.hpp"
#include "iwb/labelled.hpp"
#include "iwb/labelled_interp.hpp"
#include "iwb/maehara.hpp"
#include "iwb/modes.hpp"
#include "iwb/multiformula.hpp"
#include "iwb/oracle.hpp"
#include "iwb/pitts.hpp"
#include "iwb/proof_io.hpp"
#include "iwb/rules.hpp"
#include "iwb/search.hpp"
#include "iwb/sequent.hpp"
#include "iwb/syntax.hpp"
#include "iwb/universal.hpp"
#include "iwb/verify.hpp"

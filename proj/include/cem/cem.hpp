#pragma once

// Company entity matching toolkit: mine company-name synonym pairs from a
// job-ad corpus via description fingerprinting, train a character-level
// sequence embedding on the pairs, and rank canonical names for any query
// name by cosine distance, with classical string-similarity baselines and a
// Success@k evaluation harness.

#include "cem/baselines.hpp"
#include "cem/corpus.hpp"
#include "cem/errors.hpp"
#include "cem/eval.hpp"
#include "cem/fingerprint.hpp"
#include "cem/index.hpp"
#include "cem/md5.hpp"
#include "cem/miner.hpp"
#include "cem/model.hpp"
#include "cem/names.hpp"
#include "cem/rng.hpp"
#include "cem/tokenizer.hpp"
#include "cem/train.hpp"

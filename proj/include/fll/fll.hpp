#pragma once

#include "fll/alphabet.hpp"
#include "fll/compare.hpp"
#include "fll/corpus.hpp"
#include "fll/digits.hpp"
#include "fll/distribution.hpp"
#include "fll/laws.hpp"
#include "fll/manifest.hpp"
#include "fll/meanings.hpp"
#include "fll/ngram.hpp"
#include "fll/plot.hpp"
#include "fll/random.hpp"
#include "fll/report.hpp"
#include "fll/rgf.hpp"
#include "fll/simulate.hpp"
#include "fll/tokenize.hpp"
#include "fll/utf8.hpp"

#pragma once

#include "pcalab/natural.hpp"
#include "pcalab/term.hpp"
#include "pcalab/codec.hpp"
#include "pcalab/syntax.hpp"
#include "pcalab/eval.hpp"
#include "pcalab/pca.hpp"
#include "pcalab/k1.hpp"
#include "pcalab/corpus.hpp"
#include "pcalab/numbering.hpp"
#include "pcalab/fixedpoints.hpp"
#include "pcalab/adn.hpp"
#include "pcalab/arslanov.hpp"
#include "pcalab/k2.hpp"

#pragma once

#include "weave/context.hpp"
#include "weave/dialog.hpp"
#include "weave/episodes.hpp"
#include "weave/experiment.hpp"
#include "weave/generator.hpp"
#include "weave/miner.hpp"
#include "weave/mnemonic.hpp"
#include "weave/reduction.hpp"
#include "weave/service.hpp"
#include "weave/simplify.hpp"
#include "weave/stage.hpp"
#include "weave/syntax.hpp"
#include "weave/utterance.hpp"
#include "weave/validate.hpp"

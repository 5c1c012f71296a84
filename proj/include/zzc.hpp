#pragma once

#include "zzc/checks.hpp"
#include "zzc/colim.hpp"
#include "zzc/decor.hpp"
#include "zzc/fincat.hpp"
#include "zzc/flags.hpp"
#include "zzc/hom_window.hpp"
#include "zzc/io.hpp"
#include "zzc/necklace.hpp"
#include "zzc/objects.hpp"
#include "zzc/presentation.hpp"
#include "zzc/report.hpp"
#include "zzc/rigid.hpp"
#include "zzc/sset.hpp"
#include "zzc/sweep.hpp"
#include "zzc/union_find.hpp"
#include "zzc/zigzag.hpp"

"""The 270-item training lexicon: 117 bare/prefixed pairs plus 36 bare-only items.

Transcribed table by table. Notational normalizations applied throughout
(tense [e] folded into E, stray lowercase o/a variants into O/@, and the
handful of aspiration diacritics dropped by typographical accident restored),
while the three documented table imbalances are kept as-is: the VN- sonorant
block is missing its luru pair, and the VN- voiceless block is missing one
aspirated-stop pair in each place of articulation.

Pair rows are (sg orthography, sg segments, pl orthography, pl segments);
segment strings use the ASCII-IPA of :mod:`latentphon.segments` with '-'
marking the prefix boundary. Bare-only rows carry a copy count: duplicated
recordings in the source are duplicated training items here too.
"""

from __future__ import annotations

from .grammar import (
    INTERVOCALIC_DEVOICING,
    INTERVOCALIC_FRICATIVIZATION,
    POSTNASAL_DEVOICING,
    POSTNASAL_OCCLUSION,
    PREFIX_V,
    PREFIX_VN,
)

# --- VN- prefix, sonorant C1 (no consonant change) ---------------------------
VN_SONORANT = [
    ("len", "lEn", "enlen", "En-lEn"),
    ("lino", "linO", "enlino", "En-linO"),
    ("lor", "lOr", "onlor", "On-lOr"),
    # the luru/onluru pair is absent from this block
    ("rel", "rEl", "enrel", "En-rEl"),
    ("rinu", "rinu", "enrinu", "En-rinu"),
    ("ras", "rAs", "onras", "On-rAs"),
    ("rolo", "rOlO", "onrolo", "On-rOlO"),
    ("yim", "jim", "enyim", "En-jim"),
    ("yeni", "jEni", "enyeni", "En-jEni"),
    ("yam", "jAm", "onyam", "On-jAm"),
    ("yalu", "jAlu", "onyalu", "On-jAlu"),
]

# --- V- prefix, sonorant C1 ---------------------------------------------------
V_SONORANT = [
    ("lem", "lEm", "elem", "E-lEm"),
    ("lino", "linO", "elino", "E-linO"),
    ("lor", "lOr", "olor", "O-lOr"),
    ("luru", "luru", "oluru", "O-luru"),
    ("rel", "rEl", "erel", "E-rEl"),
    ("rinu", "rinu", "erinu", "E-rinu"),
    ("ras", "rAs", "oras", "O-rAs"),
    ("rolo", "rOlO", "orolo", "O-rOlO"),
    ("yim", "jim", "eyim", "E-jim"),
    ("yeni", "jEni", "eyeni", "E-jEni"),
    ("yam", "jAm", "oyam", "O-jAm"),
    ("yalu", "jAlu", "oyalu", "O-jAlu"),
]

# --- VN- prefix, voiceless obstruent C1 ---------------------------------------
VN_VOICELESS = [
    ("pina", "phin@", "empina", "Em-phin@"),
    ("pimi", "phimi", "empimi", "Em-phimi"),
    ("poro", "phOrO", "omporo", "Om-phOrO"),
    ("fini", "fini", "emfini", "Em-fini"),
    ("fima", "fim@", "emfima", "Em-fim@"),
    ("fura", "fur@", "omfura", "Om-fur@"),
    ("folo", "fOlO", "omfolo", "Om-fOlO"),
    ("telo", "thElO", "entelo", "En-thElO"),
    ("tina", "thin@", "entina", "En-thin@"),
    ("taru", "thAru", "ontaru", "On-thAru"),
    ("seno", "sEnO", "enseno", "En-sEnO"),
    ("sila", "sil@", "ensila", "En-sil@"),
    ("soro", "sOrO", "onsoro", "On-sOrO"),
    ("sanu", "sAnu", "onsanu", "On-sAnu"),
]

# --- V- prefix, voiceless obstruent C1 ----------------------------------------
V_VOICELESS = [
    ("pina", "phin@", "epina", "E-phin@"),
    ("pimi", "phimi", "epimi", "E-phimi"),
    ("poro", "phOrO", "oporo", "O-phOrO"),
    ("pomo", "phOmO", "opomo", "O-phOmO"),
    ("fini", "fini", "efini", "E-fini"),
    ("fima", "fim@", "efima", "E-fim@"),
    ("fura", "fur@", "ofura", "O-fur@"),
    ("folo", "fOlO", "ofolo", "O-fOlO"),
    ("telo", "thElO", "etelo", "E-thElO"),
    ("tina", "thin@", "etina", "E-thin@"),
    ("taru", "thAru", "otaru", "O-thAru"),
    ("tomo", "thOmO", "otomo", "O-thOmO"),
    ("seno", "sEnO", "eseno", "E-sEnO"),
    ("sila", "sil@", "esila", "E-sil@"),
    ("soro", "sOrO", "osoro", "O-sOrO"),
    ("sanu", "sAnu", "osanu", "O-sAnu"),
]

# --- VN- prefix, changing C1 (16 + 16 pairs) ----------------------------------
VN_STOP_DEVOICING = [
    ("bila", "bil@", "empila", "Em-phil@"),
    ("bera", "bEr@", "empera", "Em-phEr@"),
    ("bilo", "bilO", "empilo", "Em-philO"),
    ("bema", "bEm@", "empema", "Em-phEm@"),
    ("bula", "bul@", "ompula", "Om-phul@"),
    ("balu", "bAlu", "ompalu", "Om-phAlu"),
    ("bora", "bOr@", "ompora", "Om-phOr@"),
    ("bune", "bunE", "ompune", "Om-phunE"),
    ("dilo", "dilO", "entilo", "En-thilO"),
    ("diri", "diri", "entiri", "En-thiri"),
    ("delo", "dElO", "entelo", "En-thElO"),
    ("dema", "dEm@", "entema", "En-thEm@"),
    ("dule", "dulE", "ontule", "On-thulE"),
    ("doru", "dOru", "ontoru", "On-thOru"),
    ("dale", "dAlE", "ontale", "On-thAlE"),
    ("duna", "dun@", "ontuna", "On-thun@"),
]

VN_FRICATIVE_OCCLUSION = [
    ("vila", "vil@", "empila", "Em-phil@"),
    ("vemo", "vEmO", "empemo", "Em-phEmO"),
    ("vira", "vir@", "empira", "Em-phir@"),
    ("vela", "vEl@", "empela", "Em-phEl@"),
    ("vulo", "vulO", "ompulo", "Om-phulO"),
    ("varu", "vAru", "omparu", "Om-phAru"),
    ("vona", "vOn@", "ompona", "Om-phOn@"),
    ("vule", "vulE", "ompule", "Om-phulE"),
    ("zila", "zil@", "entila", "En-thil@"),
    ("zira", "zir@", "entira", "En-thir@"),
    ("zemo", "zEmO", "entemo", "En-thEmO"),
    ("zeni", "zEni", "enteni", "En-thEni"),
    ("zulo", "zulO", "ontulo", "On-thulO"),
    ("zaru", "zAru", "ontaru", "On-thAru"),
    ("zole", "zOlE", "ontole", "On-thOlE"),
    ("zune", "zunE", "ontune", "On-thunE"),
]

# --- V- prefix, changing C1 (16 + 16 pairs) -----------------------------------
V_STOP_DEVOICING = [
    ("belo", "bElO", "epelo", "E-phElO"),
    ("bela", "bEl@", "epela", "E-phEl@"),
    ("bira", "bir@", "epira", "E-phir@"),
    ("bima", "bim@", "epima", "E-phim@"),
    ("bule", "bulE", "opule", "O-phulE"),
    ("baru", "bAru", "oparu", "O-phAru"),
    ("bulo", "bulO", "opulo", "O-phulO"),
    ("bona", "bOn@", "opona", "O-phOn@"),
    ("dila", "dil@", "etila", "E-thil@"),
    ("diru", "diru", "etiru", "E-thiru"),
    ("deni", "dEni", "eteni", "E-thEni"),
    ("dema", "dEm@", "etema", "E-thEm@"),
    ("dulo", "dulO", "otulo", "O-thulO"),
    ("daru", "dAru", "otaru", "O-thAru"),
    ("dole", "dOlE", "otole", "O-thOlE"),
    ("dune", "dunE", "otune", "O-thunE"),
]

V_STOP_FRICATIVIZATION = [
    ("bilo", "bilO", "efilo", "E-filO"),
    ("bema", "bEm@", "efema", "E-fEm@"),
    ("bila", "bil@", "efila", "E-fil@"),
    ("bero", "bErO", "efero", "E-fErO"),
    ("bula", "bul@", "ofula", "O-ful@"),
    ("balu", "bAlu", "ofalu", "O-fAlu"),
    ("bora", "bOr@", "ofora", "O-fOr@"),
    ("bune", "bunE", "ofune", "O-funE"),
    ("dilu", "dilu", "esilu", "E-silu"),
    ("diri", "diri", "esiri", "E-siri"),
    ("deme", "dEmE", "eseme", "E-sEmE"),
    ("deno", "dEnO", "eseno", "E-sEnO"),
    ("dule", "dulE", "osule", "O-sulE"),
    ("doru", "dOru", "osoru", "O-sOru"),
    ("dala", "dAl@", "osala", "O-sAl@"),
    ("duna", "dun@", "osuna", "O-sun@"),
]

# --- bare-only items (with source copy counts) --------------------------------
BARE_ONLY = [
    ("bara", "bAr@", 1),
    ("baja", "bAj@", 2),
    ("bene", "bEnE", 1),
    ("beyo", "bEjO", 2),
    ("biye", "bijE", 1),
    ("buye", "bujE", 1),
    ("vara", "vAr@", 1),
    ("vaya", "vAj@", 1),
    ("vene", "vEnE", 1),
    ("vejo", "vEjO", 1),
    ("dami", "dAmi", 1),
    ("dawe", "dAwE", 1),
    ("dawo", "dAwO", 1),
    ("dele", "dElE", 1),
    ("dewe", "dEwE", 1),
    ("diwo", "diwO", 2),
    ("dowa", "dOw@", 1),
    ("zami", "zAmi", 1),
    ("zawo", "zAwO", 1),
    ("zele", "zElE", 1),
    ("ziwo", "ziwO", 1),
    ("leni", "lEni", 2),
    ("liro", "lirO", 2),
    ("lona", "lOn@", 2),
    ("lonu", "lOnu", 2),
    ("rema", "rEm@", 2),
    ("ruro", "rurO", 2),
]

#: (rows, prefix shape, process group or None) for every paired block
PAIR_BLOCKS = [
    (VN_SONORANT, PREFIX_VN, None),
    (V_SONORANT, PREFIX_V, None),
    (VN_VOICELESS, PREFIX_VN, None),
    (V_VOICELESS, PREFIX_V, None),
    (VN_STOP_DEVOICING, PREFIX_VN, POSTNASAL_DEVOICING),
    (VN_FRICATIVE_OCCLUSION, PREFIX_VN, POSTNASAL_OCCLUSION),
    (V_STOP_DEVOICING, PREFIX_V, INTERVOCALIC_DEVOICING),
    (V_STOP_FRICATIVIZATION, PREFIX_V, INTERVOCALIC_FRICATIVIZATION),
]

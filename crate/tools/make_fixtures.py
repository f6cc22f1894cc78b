#!/usr/bin/env python3
"""Generates the bundled fixture corpora used by the language tests.

Two synthetic languages with distinct letter statistics:
  * "English": common English vocabulary with a Zipf tail of rarer words,
    plus a small rate of Latin loan tokens (the rare foreign-looking
    patterns that eventually show up in any large real corpus).
  * "Latin": real Latin vocabulary with characteristic inflection endings.

Lines are short phrases of 2-5 words. Regenerate with:
    python3 tools/make_fixtures.py
Outputs land in crates/core/tests/fixtures/.
"""

import random
from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent.parent / "crates" / "core" / "tests" / "fixtures"

ENGLISH_COMMON = """
the and for are but not you all any can had her was one our out day get has him
his how man new now old see two way who boy did its let put say she too use that
with have this will your from they know want been good much some time very when
come here just like long make many over such take than them well were what about
after again away back because before below between both down even every first
found great hand high house into keep kind last left life light little live look
made mean more most mother move must name near never next night only open other
part people place right same school seem shall show small sound spell still
study then there these thing think three through together under until water
where which while word work world would write year young above almost along
always animal answer around become began behind better carry change children
city close country earth enough example explain family father follow food form
girl give grow head hear help home idea important large later learn letter line
list might mile miss mountain music near need often page paper picture plant
point question quick read river road said sentence set should side small song
soon start state stop story talk tell their tree turn walk watch white why
against ago air among area asked away become bird boat body book box bread
bring build busy buy call came car care case cat cent city class cold cook cool
corn cost cover cross cry cup cut dance dark deep desk dish dog door draw dream
drink drive drop dry duck each ear early east easy eat edge egg eight else end
evening face fact fall farm fast feed feel feet fell felt few field fight fill
find fine finger finish fire fish five flag floor flower fly foot four fox free
fresh friend front fruit full fun game garden gate gave glad glass goes gold
gone grass green ground group grew hair half hall happy hard hat head heard
heart heavy held hello herself hill hold hole hope horse hot hour hundred ice
inch inside iron job jump keep kept key kill king knew lady lake land large
late laugh lay lead leave left leg less letter lift line lion lips list long
lost lot loud love low lunch mad map mark may meat meet men met milk mind mine
minute moment money month moon morning mouth much music myself nail near neck
nest nice nine north nose note nothing number ocean off office once order
outside own page paint pair paper park part party pass past pay pen pencil
pick pig plan plane plant plate play please pocket pond poor pull pure push
rain ran reach red rest rich ride ring rock room run sad safe sail salt sand
sat save saw sea seat second seed seen self sell send seven shape sheep ship
shoe shop short shout sick sign sing sister sit six size skin sky sleep slow
snow sock soft some song sort south space speak spring stand star stay step
stick stone stood store storm street strong summer sun table tail teach team
ten tenth test thank thick thin third those thought thousand throw tie tiger
today told tomorrow tonight took tooth top town train trip truck true try
twenty uncle upon us valley village visit voice wait wake wall warm wash
watch wave wear week went west wet wheel wide wife wild win wind window wing
winter wish woman women wood wool word wore worker yard yellow yes yesterday
""".split()

ENGLISH_RARE = """
whimsical gossamer quagmire zephyr knapsack bramble thicket sundry wrought
hearth trencher cobbler farthing shilling tuppence halfpenny sixpence
blacksmith wheelwright cooper fletcher chandler haberdasher milliner draper
ostler farrier thatcher glazier mason sawyer tanner currier weaver fuller
dyer mercer grocer vintner brewer maltster miller baker butcher fishmonger
poulterer costermonger hawker pedlar tinker gypsy vagabond scoundrel knave
rascal rogue scallywag blackguard ruffian brigand highwayman footpad cutpurse
pickpocket smuggler poacher gamekeeper warden bailiff constable magistrate
alderman burgess yeoman squire knight baron earl marquess duke viscount
kingdom dukedom earldom fiefdom serfdom bondage thralldom villein churl
thane housecarl reeve sheriff shire hundred wapentake tithing frankpledge
jetsam flotsam driftwood seaweed barnacle limpet whelk cockle mussel oyster
porpoise dolphin whale walrus seal otter beaver badger weasel stoat ferret
polecat marten sable ermine mink muskrat vole shrew dormouse hedgehog mole
""".split()

LATIN_LOANS = """
via circa status campus forum bonus exit item veto alias agenda audio video
data media area arena era aroma dilemma formula maximum minimum premium
stadium medium museum radius genius virus focus fungus census consensus
apparatus impetus nucleus syllabus terminus quorum spectrum curriculum
memorandum referendum ultimatum momentum auditorium aquarium equilibrium
millennium symposium axis basis crisis thesis analysis hypothesis emphasis
synopsis nemesis genesis oasis villa opus onus ego alibi quota rabies series
species superior interior exterior ulterior senator doctor factor vector
victor actor error terror horror mirror pallor squalor tumor rumor humor
""".split()

LATIN = """
aqua bellum dominus terra caelum ignis ventus mare populus senatus imperium
gladius scutum legio miles castra pons urbs civitas templum deus sacerdos
hostia victoria iudex crimen poena carcer servus liber magister discipulus
schola littera verbum lingua auris oculus manus caput corpus sanguis vita
mors amor odium ira timor spes fides virtus honor gloria fama fortuna fatum
tempus annus mensis dies hora luna stella nubes pluvia flumen mons vallis
silva arbor folium flos fructus semen ager rus villa domus porta murus
turris forum basilica curia theatrum circus thermae provincia consul
praetor quaestor tribunus centurio cohors aquila signum bellator hostis
socius amicus inimicus frater soror pater mater filius filia uxor maritus
avus nepos heres testamentum pecunia aurum argentum ferrum aes plumbum
marmor lapis saxum harena pulvis cinis fumus flamma lumen umbra imago
somnium vigilia labor otium negotium ludus victor vates poeta carmen
fabula historia memoria sapientia scientia prudentia iustitia temperantia
fortitudo pietas clementia severitas auctoritas dignitas libertas servitus
dominorum bellorum aquarum militibus hostibus civibus legibus moribus
amamus amatis amant amabat amaverunt laudamus laudatis laudant laudabat
regnum regnorum imperator imperatoris senatoris consulis praetoris
civitatis civitatum temporis temporum nominis nominum corporis corporum
itineris itinerum fluminis fluminum luminis carminis carminum vulneris
omnibus quibus rebus manibus diebus noctibus urbibus navibus partibus
""".split()


def zipf_weights(n, s=1.05):
    return [1.0 / (rank + 2.0) ** s for rank in range(n)]


def make_language(rng, common, rare=None, rare_rate=0.0, loans=None, loan_rate=0.0):
    cw = zipf_weights(len(common))
    rw = zipf_weights(len(rare)) if rare else None

    def draw_word():
        u = rng.random()
        if loans is not None and u < loan_rate:
            return rng.choice(loans)
        if rw is not None and u < loan_rate + rare_rate:
            return rng.choices(rare, weights=rw, k=1)[0]
        return rng.choices(common, weights=cw, k=1)[0]

    def draw_line():
        return " ".join(draw_word() for _ in range(rng.randint(2, 5)))

    return draw_line


def write_lines(path, draw_line, count):
    with open(path, "w") as f:
        for _ in range(count):
            f.write(draw_line() + "\n")
    print(f"wrote {path}")


def main():
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20240917)
    english = make_language(
        rng, ENGLISH_COMMON, rare=ENGLISH_RARE, rare_rate=0.06, loans=LATIN_LOANS + LATIN, loan_rate=0.04
    )
    latin = make_language(rng, LATIN)

    write_lines(OUT_DIR / "english_train.txt", english, 6000)
    write_lines(OUT_DIR / "english_test_a.txt", english, 600)
    write_lines(OUT_DIR / "english_test_b.txt", english, 600)
    write_lines(OUT_DIR / "latin_test.txt", latin, 600)


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Freeze Porter stemmer test vectors using NLTK's reference implementation.

NLTK's MARTIN_EXTENSIONS mode reproduces the reference C implementation that
produced the published voc.txt/output.txt vector pair. Output goes to
tests/data/porter_vectors.tsv as `word<TAB>stem<TAB>stem-of-stem` lines. The
third column records the reference output when the stemmer is re-applied to
its own output; Porter stemming is not idempotent in general.
"""
import sys
from pathlib import Path

from nltk.stem.porter import PorterStemmer

WORDS = """
caresses ponies ties caress cats feed agreed disabled matting mating meeting
milling messing meetings plastered bled motoring sing conflated troubled sized
hopping tanned falling hissing fizzed failing filing happy sky relational
conditional rational valenci hesitanci digitizer conformabli radicalli
differentli vileli analogousli vietnamization predication operator feudalism
decisiveness hopefulness callousness formaliti sensitiviti sensibiliti
triplicate formative formalize electriciti electrical hopeful goodness revival
allowance inference airliner gyroscopic adjustable defensible irritant
replacement adjustment dependent adoption homologou communism activate
angulariti homologous effective bowdlerize probate rate cease controll roll
generalizations oscillators abandon abandoned abandoning abandonment abandons
abate abated abatement abbey abilities ability able abode abolish abominable
about above abroad absence absent absolute absolutely absorbed abstain
abundance abundant abuse academic accelerate acceptance accessible accident
accidentally accommodation accompanied accomplish according accordingly
account accounting accurate accustomed achievement acknowledge acquaintance
activities actual actually adaptation addition additional adequate
administration admiration admitted adventure advertisement affectionate
agreement alarming allowed alternative amazing analysis anticipation
apparently appreciation approaching arguing arrangement artificial assistance
association assumption astronomy athletic attentively authority available
awareness beautiful beginning believing beneficial boundaries brightness
broadcasting butterflies calculation capabilities carefully celebrating
centralization certainly characteristics cheerfully children civilization
classification collectively combination comfortable commercial communication
comparison competitive completely complexity computational computer computing
concentration conclusion conditionally confidential congratulations
connection consciousness consideration constitutional continually
contribution controversial conversation cooperative correspondence countries
creativity criticism cultural curiosity dangerously declaration definitely
demonstration dependency description destruction development differently
disagreement discovery distinguished easily economical education efficiency
electricity emotional encouraging engineering enormous entertainment
environmental equality especially evaluation eventually excitement
experimental explanation extraordinary fascinating festivities flying
friendliness generously government gracefully happiness harmonious heaviness
historical hockey hopelessly identification imagination immediately
implementation importantly impossibility independence individually
industrial information institutional intelligence international
interpretation investigation irresistible jealousy journalism judgement
kindness knowledgeable laboratory languages legitimate liberation linguistics
locations loneliness magnificent management mathematical meaningful
measurement mechanical membership misunderstanding modernization motivation
mysterious nationality naturally negotiation nervousness newspapers
nonetheless notification observation occasionally operational opportunities
organization organizational originally ownership painfully participation
particularly peacefully performance personality philosophical physically
pleasantly political population possibility powerful practically
preparation presidential probability procedural professional progressive
pronunciation psychological publication qualification questionable
rationalization readiness realistically recommendation reconciliation
reflection relationship relativity reliability religious remarkably
representative responsibility revolutionary satellites scientific
seriousness significance similarity simplification sociology spaceflight
specialization spectacular spiritual standardization statistical
strengthening successfully suggestion supervision surprisingly sustainable
technological telescopes temperature tendencies theoretical thoughtfulness
traditional transformation transportation tremendous truthfulness uncertainty
understanding universities unnecessarily usefulness vaccination valuable
variations visualization vulnerability weaknesses wonderful worthiness
youthfulness zoological technology apology biology rivers archaeology genealogy
""".split()


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("tests/data/porter_vectors.tsv")
    stemmer = PorterStemmer(mode=PorterStemmer.MARTIN_EXTENSIONS)
    seen = set()
    with out.open("w", newline="\n") as f:
        for w in WORDS:
            if w in seen:
                continue
            seen.add(w)
            once = stemmer.stem(w)
            f.write(f"{w}\t{once}\t{stemmer.stem(once)}\n")


if __name__ == "__main__":
    main()

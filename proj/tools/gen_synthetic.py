#!/usr/bin/env python3
"""Generate the synthetic corpus and knowledge base under data/synthetic/.

Four topics, each with its own pool of invented words. Documents are short:
a few topic words plus shared filler, so two documents of the same class
rarely overlap. Knowledge-base articles cover every topic word at least
twice and carry topic-specific titles, categories and links.

Output is fully determined by SEED; rerunning overwrites the files.
"""
import random
import shutil
from pathlib import Path

from nltk.stem.porter import PorterStemmer

SEED = 20240611
POOL_SIZE = 150
ARTICLES_PER_TOPIC = 12
ARTICLE_WORDS = 30
DOCS_PER_TOPIC = 50
DOC_TOPIC_WORDS = 3
DOC_FILLER_WORDS = 3
# chance that one topic word of a document comes from another topic
DOC_STRAY_RATE = 0.3
# words borrowed from other topics in every article body
ARTICLE_STRAY_WORDS = 4

TOPICS = {
    "astronomy": {
        "categories": ["Astronomy", "Celestial mechanics", "Observatories"],
        "heads": ["Nebula", "Comet", "Telescope", "Galaxy", "Orbit", "Pulsar"],
    },
    "cooking": {
        "categories": ["Cooking", "Baking", "Cuisine"],
        "heads": ["Recipe", "Pastry", "Sauce", "Oven", "Broth", "Dough"],
    },
    "hockey": {
        "categories": ["Hockey", "Ice rinks", "Winter sports"],
        "heads": ["Puck", "Goalie", "Rink", "Arena", "League", "Skate"],
    },
    "networking": {
        "categories": ["Networking", "Routing protocols", "Telecommunication"],
        "heads": ["Router", "Packet", "Gateway", "Firewall", "Protocol", "Switch"],
    },
}

FILLER = """
report week people today group meeting story question morning evening friend
letter answer problem reason result change point place idea thing house city
country family person number moment minute month summer autumn spring chance
journey weekend picture message window street garden corner table paper share
""".split()

CONSONANTS = "bdfgklmnprstvz"
VOWELS = "aeiou"

stemmer = PorterStemmer(PorterStemmer.MARTIN_EXTENSIONS)


def invent(rng, taken_words, taken_stems):
    while True:
        word = "".join(rng.choice(CONSONANTS) + rng.choice(VOWELS) for _ in range(rng.randint(2, 3)))
        word += rng.choice(CONSONANTS)
        stem = stemmer.stem(word)
        if word not in taken_words and stem not in taken_stems:
            taken_words.add(word)
            taken_stems.add(stem)
            return word


def main():
    root = Path(__file__).resolve().parent.parent / "data" / "synthetic"
    rng = random.Random(SEED)
    stopwords = set((root.parent / "stopwords.txt").read_text().split())
    taken_words = set(stopwords) | set(FILLER)
    taken_stems = {stemmer.stem(w) for w in taken_words}
    for spec in TOPICS.values():
        for text in spec["categories"] + spec["heads"]:
            for w in text.lower().split():
                taken_words.add(w)
                taken_stems.add(stemmer.stem(w))

    pools = {t: [invent(rng, taken_words, taken_stems) for _ in range(POOL_SIZE)] for t in TOPICS}

    kb_lines = []
    for topic, spec in TOPICS.items():
        pool = pools[topic]
        # every pool word lands in at least two articles
        slots = pool + pool
        rng.shuffle(slots)
        bodies = [slots[i::ARTICLES_PER_TOPIC] for i in range(ARTICLES_PER_TOPIC)]
        titles = []
        for i in range(ARTICLES_PER_TOPIC):
            titles.append(f"{pool[i].capitalize()} {spec['heads'][i % len(spec['heads'])]}")
        for i, body in enumerate(bodies):
            while len(body) < ARTICLE_WORDS - ARTICLE_STRAY_WORDS:
                body.append(rng.choice(pool))
            others = [w for t, p in pools.items() if t != topic for w in p]
            body += rng.sample(others, ARTICLE_STRAY_WORDS)
            rng.shuffle(body)
            cats = rng.sample(spec["categories"], 2)
            links = rng.sample([t for j, t in enumerate(titles) if j != i], 2)
            article_id = f"{topic}_{i + 1:02d}"
            kb_lines.append("\t".join([article_id, titles[i], "|".join(cats), "|".join(links),
                                       " ".join(body) + "."]))
    (root / "kb.tsv").write_text("\n".join(kb_lines) + "\n")

    corpus = root / "corpus"
    if corpus.exists():
        shutil.rmtree(corpus)
    for topic in TOPICS:
        folder = corpus / topic
        folder.mkdir(parents=True)
        for d in range(DOCS_PER_TOPIC):
            words = rng.sample(pools[topic], DOC_TOPIC_WORDS)
            if rng.random() < DOC_STRAY_RATE:
                other = rng.choice([t for t in TOPICS if t != topic])
                words[0] = rng.choice(pools[other])
            words += rng.sample(FILLER, DOC_FILLER_WORDS)
            rng.shuffle(words)
            text = " ".join(words)
            (folder / f"{d + 1:03d}.txt").write_text(text[0].upper() + text[1:] + ".\n")


if __name__ == "__main__":
    main()

// Live end-to-end parity against a real service. Opt-in:
//
//   framecast serve --store /tmp/store.json --bind 127.0.0.1:8787 &
//   FRAMECAST_URL=http://127.0.0.1:8787 npx vitest run tests/live.test.ts
//
// The store must contain the seed ontology and at least one document.

import { describe, expect, it } from 'vitest';
import { readFileSync } from 'node:fs';
import { fileURLToPath } from 'node:url';

import { ApiClient } from '../src/api.js';
import { ClassificationWizard } from '../src/wizard.js';
import { boxesClose, upsertKeyframe } from '../src/boxes.js';
import type { BoxPayload, GestureFeaturesPayload, ClassificationResultPayload, TrackPayload } from '../src/types.js';

const baseUrl = process.env.FRAMECAST_URL;

interface GoldenEntry {
  name: string;
  features: GestureFeaturesPayload;
  response: ClassificationResultPayload;
}

const fixturePath = fileURLToPath(new URL('./fixtures/golden.json', import.meta.url));
const fixture = JSON.parse(readFileSync(fixturePath, 'utf-8')) as { golden: GoldenEntry[] };

describe.skipIf(!baseUrl)('live service parity', () => {
  const api = () => new ApiClient(baseUrl!);

  for (const entry of fixture.golden) {
    it(`wizard verdict equals POST /classify for ${entry.name}`, async () => {
      const client = api();
      const wizard = new ClassificationWizard((features) => client.classify(features));
      wizard.answerTopicCheck(false);
      wizard.answerInteractiveCriteria({
        paraphrase: entry.features.paraphrase ?? null,
        paraphraseTopicIndependent: entry.features.paraphrase_topic_independent,
        paraphraseAddressedToInterlocutor: entry.features.paraphrase_addressed_to_interlocutor,
        orientationTowardComprehender: entry.features.orientation_toward_comprehender,
      });
      await wizard.submitGestureForm({
        palmOrientation: entry.features.palm_orientation,
        armConfiguration: entry.features.arm_configuration,
        motionPattern: entry.features.motion_pattern,
        handShape: entry.features.hand_shape,
        comprehenderPosition: entry.features.comprehender_position,
      });
      const direct = await client.classify(entry.features);
      expect(wizard.displayedVerdict).toBe(direct.verdict ?? null);
      expect(wizard.serverResult).toEqual(direct);
    });
  }

  it('a drawn box survives save/reload within 0.001', async () => {
    const client = api();
    const documents = await client.getDocuments();
    expect(documents.length).toBeGreaterThan(0);
    const doc = documents[0];
    const drawn: BoxPayload = { x: 0.40501, y: 0.25199, w: 0.12345, h: 0.20001 };
    let track: TrackPayload = { keyframes: [] };
    track = upsertKeyframe(track, 1_000, drawn);
    track = upsertKeyframe(track, 2_000, { ...drawn, x: drawn.x + 0.05 });

    const objectId = `live_test_${Date.now()}`;
    const created = await client.postGesture({
      document: doc.id,
      member_objects: [
        {
          id: objectId,
          document: doc.id,
          cv_name: 'Body_parts: mão',
          category_frame: 'Body_parts',
          category_lu: { lemma: 'mão', pos: 'noun', frame: 'Body_parts' },
          track,
        },
      ],
      members: [objectId],
      features: fixture.golden[0].features,
      evoked_frame: 'Turn_passing',
      provenance: 'manual',
      version: 1,
    } as never);
    expect(created.members).toEqual([objectId]);

    const reloaded = await fetch(`${baseUrl}/visual-objects/${objectId}`).then((r) => r.json());
    expect(boxesClose(reloaded.track.keyframes[0].box, drawn, 0.001)).toBe(true);
  });
});

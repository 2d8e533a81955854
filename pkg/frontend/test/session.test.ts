/**
 * Automated browser test (jsdom): keyboard-only session, auto-advance
 * timing, feedback rules, payload leak guard, retry, and resume.
 */

import { afterEach, beforeEach, describe, expect, it } from 'vitest';

import { TrialRunner } from '../src/ui.js';
import { MemoryStorage, MockGateway } from './mock_server.js';

let root: HTMLElement;
let runner: TrialRunner | null = null;

beforeEach(() => {
  document.body.innerHTML = '<div id="app"></div>';
  root = document.getElementById('app') as HTMLElement;
});

afterEach(() => {
  runner?.dispose();
  runner = null;
});

function key(k: string): void {
  document.dispatchEvent(new KeyboardEvent('keydown', { key: k, bubbles: true, cancelable: true }));
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

async function until(cond: () => boolean, timeoutMs = 4000): Promise<void> {
  const start = Date.now();
  while (!cond()) {
    if (Date.now() - start > timeoutMs) throw new Error('condition never became true');
    await sleep(4);
  }
}

function text(): string {
  return root.textContent ?? '';
}

function makeRunner(server: MockGateway, opts: { now?: () => number; storage?: Storage } = {}) {
  return new TrialRunner(root, '', {
    agentId: 'kbd-tester',
    fetchImpl: server.fetch,
    storage: opts.storage ?? new MemoryStorage(),
    now: opts.now,
  });
}

async function keyboardTrial(server: MockGateway, option: string, confidence: string) {
  await until(() => root.querySelector('.trial-screen') !== null);
  const before = server.submissions.length;
  key(option);
  key(confidence);
  key('Enter');
  await until(() => server.submissions.length === before + 1);
}

describe('keyboard-driven session', () => {
  it('completes end to end without a pointer', async () => {
    const server = new MockGateway(3, 12);
    runner = makeRunner(server);
    await runner.start();

    await until(() => text().includes('Welcome'));
    key(' '); // information screen -> begin
    await until(() => root.querySelector('.modal-overlay') !== null); // instruction modal
    key('Escape');

    let sawRest = false;
    let testConfirmationsChecked = 0;
    while (runner.phase !== 'done') {
      if (root.querySelector('.trial-screen')) {
        const trialIsTest = text().includes('practice') === false;
        const before = server.submissions.length;
        key(String((before % 5) + 1)); // option
        key(String((before % 5) + 1)); // confidence
        key('Enter');
        await until(() => server.submissions.length === before + 1);
        await until(() => root.querySelector('.confirmation-screen') !== null);
        if (trialIsTest) {
          expect(root.querySelector('.feedback')).toBeNull();
          testConfirmationsChecked += 1;
        }
        key(' '); // confirmation -> next
        await until(() => root.querySelector('.confirmation-screen') === null);
      } else if (root.querySelector('.rest-screen')) {
        sawRest = true;
        expect(root.querySelector('.progress-fill')).not.toBeNull();
        key(' ');
        await until(() => root.querySelector('.rest-screen') === null);
      } else {
        await sleep(4);
      }
    }

    expect(server.submissions.length).toBe(15);
    expect(sawRest).toBe(true);
    expect(testConfirmationsChecked).toBeGreaterThan(0);
    expect(text()).toContain('All done');
    for (const sub of server.submissions) {
      expect(sub.confidence).toBeGreaterThanOrEqual(1);
      expect(sub.confidence).toBeLessThanOrEqual(5);
      expect(sub.reaction_time_ms).toBeGreaterThanOrEqual(0);
    }
  }, 20_000);

  it('never receives or shows correctness for test trials', async () => {
    const server = new MockGateway(1, 11);
    runner = makeRunner(server);
    await runner.start();
    key(' ');
    await until(() => root.querySelector('.modal-overlay') !== null);
    key('Escape');

    while (runner.phase !== 'done') {
      if (root.querySelector('.trial-screen')) {
        await keyboardTrial(server, '1', '3');
        await until(() => root.querySelector('.confirmation-screen') !== null);
        key(' ');
        await until(() => root.querySelector('.confirmation-screen') === null);
      } else if (root.querySelector('.rest-screen')) {
        key(' ');
        await until(() => root.querySelector('.rest-screen') === null);
      } else {
        await sleep(4);
      }
    }

    for (const payload of server.servedCurrentPayloads) {
      expect('correct_option' in payload).toBe(false);
      if (payload.trial_phase === 'test' && payload.phase === 'confirmation') {
        expect(payload.feedback_correct).toBeNull();
      }
    }
  }, 20_000);
});

describe('confirmation auto-advance', () => {
  it('fires at 3000 ms within +/- 50 ms without input', async () => {
    const server = new MockGateway(1, 1);
    runner = makeRunner(server);
    await runner.start();
    key(' ');
    await until(() => root.querySelector('.modal-overlay') !== null);
    key('Escape');
    await keyboardTrial(server, '1', '1');
    await until(() => root.querySelector('.confirmation-screen') !== null);

    const confirmedAt = server.responseReturnedAt[0] as number;
    const continuesBefore = server.continueArrivedAt.length;
    await until(() => server.continueArrivedAt.length > continuesBefore, 5000);
    const firedAt = server.continueArrivedAt[continuesBefore] as number;
    const elapsed = firedAt - confirmedAt;
    expect(elapsed).toBeGreaterThanOrEqual(2950);
    expect(elapsed).toBeLessThanOrEqual(3050);
  }, 10_000);
});

describe('trial input rules', () => {
  it('blocks submit until both answer and confidence are chosen', async () => {
    const server = new MockGateway(1, 1);
    runner = makeRunner(server);
    await runner.start();
    key(' ');
    await until(() => root.querySelector('.modal-overlay') !== null);
    key('Escape');
    await until(() => root.querySelector('.trial-screen') !== null);

    key('Enter');
    await sleep(25);
    expect(server.submissions.length).toBe(0);

    key('2'); // option only
    key('Enter');
    await sleep(25);
    expect(server.submissions.length).toBe(0);
    const submit = root.querySelector<HTMLButtonElement>('.submit-button');
    expect(submit?.disabled).toBe(true);

    key('4'); // confidence
    expect(root.querySelector<HTMLButtonElement>('.submit-button')?.disabled).toBe(false);
    key('Enter');
    await until(() => server.submissions.length === 1);
    expect(server.submissions[0]?.choice_index).toBe(1);
    expect(server.submissions[0]?.confidence).toBe(4);
  });

  it('shows practice feedback on the confirmation screen', async () => {
    const server = new MockGateway(2, 1);
    runner = makeRunner(server);
    await runner.start();
    key(' ');
    await until(() => root.querySelector('.modal-overlay') !== null);
    key('Escape');

    // First practice trial: correct answer is option 1 (index 0).
    await keyboardTrial(server, '1', '5');
    await until(() => root.querySelector('.confirmation-screen') !== null);
    expect(root.querySelector('.feedback')?.textContent).toBe('Correct');
    key(' ');

    // Second practice trial: correct is index 1; answer index 2 instead.
    await keyboardTrial(server, '3', '5');
    await until(() => root.querySelector('.feedback') !== null);
    expect(root.querySelector('.feedback')?.textContent).toBe('Incorrect');
  });

  it('reports reaction time from stimulus render to submit, monotone with delay', async () => {
    let now = 0;
    const server = new MockGateway(0, 2);
    runner = makeRunner(server, { now: () => now });
    await runner.start();
    key(' ');
    await until(() => root.querySelector('.modal-overlay') !== null);
    key('Escape');

    await until(() => root.querySelector('.trial-screen') !== null);
    now += 500;
    key('1');
    key('1');
    key('Enter');
    await until(() => server.submissions.length === 1);
    await until(() => root.querySelector('.confirmation-screen') !== null);
    key(' ');

    await until(() => root.querySelector('.trial-screen') !== null);
    now += 1500;
    key('1');
    key('1');
    key('Enter');
    await until(() => server.submissions.length === 2);

    const [first, second] = server.submissions;
    expect(first?.reaction_time_ms).toBe(500);
    expect(second?.reaction_time_ms).toBe(1500);
    expect(second!.reaction_time_ms).toBeGreaterThan(first!.reaction_time_ms);
  });
});

describe('instructions modal', () => {
  it('opens after the information screen and reopens from the top bar', async () => {
    const server = new MockGateway(1, 1);
    runner = makeRunner(server);
    await runner.start();
    key(' ');
    await until(() => root.querySelector('.modal-overlay') !== null);
    expect(text()).toContain('mock instructions text');
    key('Escape');
    expect(root.querySelector('.modal-overlay')).toBeNull();

    (root.querySelector('.instructions-button') as HTMLButtonElement).click();
    expect(root.querySelector('.modal-overlay')).not.toBeNull();
    key('Escape');
    key('i');
    expect(root.querySelector('.modal-overlay')).not.toBeNull();
    key('Escape');
  });
});

describe('resilience', () => {
  it('keeps the pending response through a network failure and retry', async () => {
    const server = new MockGateway(1, 1);
    runner = makeRunner(server);
    await runner.start();
    key(' ');
    await until(() => root.querySelector('.modal-overlay') !== null);
    key('Escape');
    await until(() => root.querySelector('.trial-screen') !== null);

    server.failNextSubmit = true;
    key('2');
    key('3');
    key('Enter');
    await until(() => root.querySelector('.retry-banner') !== null);
    expect(server.submissions.length).toBe(0);

    key('r');
    await until(() => server.submissions.length === 1);
    expect(server.submissions[0]?.choice_index).toBe(1);
    expect(server.submissions[0]?.confidence).toBe(3);
    await until(() => root.querySelector('.confirmation-screen') !== null);
  });

  it('resumes at the server phase after a reload', async () => {
    const server = new MockGateway(1, 2);
    const storage = new MemoryStorage();
    runner = makeRunner(server, { storage });
    await runner.start();
    key(' ');
    await until(() => root.querySelector('.modal-overlay') !== null);
    key('Escape');
    await keyboardTrial(server, '1', '2');
    key(' ');
    await until(() => root.querySelector('.trial-screen') !== null);

    // Reload: fresh DOM and runner, same storage and server.
    runner.dispose();
    document.body.innerHTML = '<div id="app"></div>';
    root = document.getElementById('app') as HTMLElement;
    runner = makeRunner(server, { storage });
    await runner.start();

    expect(server.sessionCreated).toBe(1); // resumed, not recreated
    await until(() => root.querySelector('.trial-screen') !== null);
    expect(text()).toContain('Trial 2 of 3');
  });
});
